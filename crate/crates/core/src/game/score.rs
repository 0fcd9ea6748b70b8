//! Scores over the finite rationals extended by an absorbing −∞.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::qubit::Prob;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtendedScore {
    Finite(Ratio<i64>),
    NegInfinity,
}

impl ExtendedScore {
    pub fn points(n: i64) -> Self {
        ExtendedScore::Finite(Ratio::from_integer(n))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedScore::Finite(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtendedScore::Finite(r) => r.to_f64().unwrap_or(f64::NAN),
            ExtendedScore::NegInfinity => f64::NEG_INFINITY,
        }
    }

    /// Expectation over weighted outcomes. Any positive weight on −∞ absorbs.
    pub fn expectation<'a>(weighted: impl IntoIterator<Item = (Prob, &'a ExtendedScore)>) -> ExtendedScore {
        let mut acc = Ratio::zero();
        for (p, s) in weighted {
            match s {
                ExtendedScore::NegInfinity if p > Prob::zero() => return ExtendedScore::NegInfinity,
                ExtendedScore::NegInfinity => {}
                ExtendedScore::Finite(v) => acc += p * v,
            }
        }
        ExtendedScore::Finite(acc)
    }
}

impl fmt::Display for ExtendedScore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedScore::NegInfinity => f.write_str("-inf"),
            ExtendedScore::Finite(r) if r.is_integer() => write!(f, "{}", r.numer()),
            ExtendedScore::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl FromStr for ExtendedScore {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "-inf" {
            return Ok(ExtendedScore::NegInfinity);
        }
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("bad score `{s}`: {e}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let d = parse(d)?;
                if d == 0 {
                    return Err(format!("bad score `{s}`: zero denominator"));
                }
                Ok(ExtendedScore::Finite(Ratio::new(parse(n)?, d)))
            }
            None => Ok(ExtendedScore::Finite(Ratio::from_integer(parse(s)?))),
        }
    }
}

/// Integers serialize as JSON numbers; −∞ as `"-inf"`; other rationals as `"p/q"`.
impl Serialize for ExtendedScore {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtendedScore::Finite(r) if r.is_integer() => s.serialize_i64(*r.numer()),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedScore {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Wire {
            Int(i64),
            Text(String),
        }
        match Wire::deserialize(d)? {
            Wire::Int(n) => Ok(ExtendedScore::points(n)),
            Wire::Text(t) => t.parse().map_err(D::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neg_infinity_absorbs() {
        let a = ExtendedScore::points(100);
        let b = ExtendedScore::NegInfinity;
        let e = ExtendedScore::expectation([(Prob::new(999, 1000), &a), (Prob::new(1, 1000), &b)]);
        assert_eq!(e, ExtendedScore::NegInfinity);
        let e = ExtendedScore::expectation([(Prob::from_integer(1), &a), (Prob::zero(), &b)]);
        assert_eq!(e, ExtendedScore::points(100));
    }

    #[test]
    fn exact_expectation() {
        let e = ExtendedScore::expectation([
            (Prob::new(2, 3), &ExtendedScore::points(90)),
            (Prob::new(1, 3), &ExtendedScore::points(0)),
        ]);
        assert_eq!(e, ExtendedScore::points(60));
    }

    #[test]
    fn json_forms() {
        for (score, text) in [
            (ExtendedScore::points(90), "90"),
            (ExtendedScore::NegInfinity, "\"-inf\""),
            (ExtendedScore::Finite(Ratio::new(125, 2)), "\"125/2\""),
        ] {
            assert_eq!(serde_json::to_string(&score).unwrap(), text);
            assert_eq!(serde_json::from_str::<ExtendedScore>(text).unwrap(), score);
        }
        assert!(serde_json::from_str::<ExtendedScore>("\"1/0\"").is_err());
    }
}
