//! Named states, ensembles and the pseudo-pure device map.
//!
//! Every named state has a stable string id (`epr`, `classical-corr`, `eq1`, ...)
//! used by the CLI and server. Ids can be joined with `*` to form tensor
//! products, e.g. `basis-0*maxmix-2` is |0⟩⟨0| ⊗ I/2.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix, Ket};

const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum NamedState {
    /// (|00⟩ + |11⟩)/√2
    Epr,
    /// ½|00⟩⟨00| + ½|11⟩⟨11|
    ClassicalCorr,
    /// ⅓|00⟩⟨00| + ⅙|01⟩⟨01| + ⅙|10⟩⟨10| + ⅓|11⟩⟨11|
    Eq1,
    /// Eq1 after X on the first qubit.
    Eq3,
    /// I/d over the listed subsystem dimensions.
    MaxMix(Vec<usize>),
    /// Computational basis state of qubits, most-significant first.
    Basis(Vec<u8>),
    Plus,
    Minus,
    PlusI,
    MinusI,
}

impl NamedState {
    pub fn id(&self) -> String {
        match self {
            NamedState::Epr => "epr".into(),
            NamedState::ClassicalCorr => "classical-corr".into(),
            NamedState::Eq1 => "eq1".into(),
            NamedState::Eq3 => "eq3".into(),
            NamedState::MaxMix(dims) => {
                let parts: Vec<String> = dims.iter().map(usize::to_string).collect();
                format!("maxmix-{}", parts.join("x"))
            }
            NamedState::Basis(bits) => {
                let s: String = bits.iter().map(|b| char::from(b'0' + b)).collect();
                format!("basis-{s}")
            }
            NamedState::Plus => "plus".into(),
            NamedState::Minus => "minus".into(),
            NamedState::PlusI => "plus-i".into(),
            NamedState::MinusI => "minus-i".into(),
        }
    }

    /// A representative list covering every tag.
    pub fn catalog() -> Vec<NamedState> {
        vec![
            NamedState::Epr,
            NamedState::ClassicalCorr,
            NamedState::Eq1,
            NamedState::Eq3,
            NamedState::MaxMix(vec![2]),
            NamedState::MaxMix(vec![2, 2]),
            NamedState::Basis(vec![0]),
            NamedState::Basis(vec![1]),
            NamedState::Basis(vec![0, 1]),
            NamedState::Plus,
            NamedState::Minus,
            NamedState::PlusI,
            NamedState::MinusI,
        ]
    }

    /// State vector for the pure tags.
    pub fn ket(&self) -> Option<Ket> {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        match self {
            NamedState::Epr => Some(Ket::from_real(&[H, 0.0, 0.0, H])),
            NamedState::Basis(bits) => {
                let index = bits.iter().fold(0usize, |acc, &b| acc * 2 + b as usize);
                Some(Ket::basis(1 << bits.len(), index))
            }
            NamedState::Plus => Some(Ket::from_real(&[H, H])),
            NamedState::Minus => Some(Ket::from_real(&[H, -H])),
            NamedState::PlusI => Some(Ket(vec![c(H, 0.0), c(0.0, H)])),
            NamedState::MinusI => Some(Ket(vec![c(H, 0.0), c(0.0, -H)])),
            _ => None,
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        match self {
            NamedState::Epr | NamedState::ClassicalCorr | NamedState::Eq1 | NamedState::Eq3 => vec![2, 2],
            NamedState::MaxMix(dims) => dims.clone(),
            NamedState::Basis(bits) => vec![2; bits.len()],
            _ => vec![2],
        }
    }
}

impl fmt::Display for NamedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl From<NamedState> for String {
    fn from(s: NamedState) -> String {
        s.id()
    }
}

impl TryFrom<String> for NamedState {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl FromStr for NamedState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownState(s.to_string());
        Ok(match s {
            "epr" => NamedState::Epr,
            "classical-corr" => NamedState::ClassicalCorr,
            "eq1" => NamedState::Eq1,
            "eq3" => NamedState::Eq3,
            "plus" => NamedState::Plus,
            "minus" => NamedState::Minus,
            "plus-i" => NamedState::PlusI,
            "minus-i" => NamedState::MinusI,
            _ => {
                if let Some(rest) = s.strip_prefix("maxmix-") {
                    let dims = rest
                        .split('x')
                        .map(|p| p.parse::<usize>().ok().filter(|&d| d > 0))
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(unknown)?;
                    NamedState::MaxMix(dims)
                } else if let Some(rest) = s.strip_prefix("basis-") {
                    let bits = rest
                        .chars()
                        .map(|ch| match ch {
                            '0' => Some(0u8),
                            '1' => Some(1u8),
                            _ => None,
                        })
                        .collect::<Option<Vec<_>>>()
                        .filter(|b| !b.is_empty() && b.len() <= 6)
                        .ok_or_else(unknown)?;
                    NamedState::Basis(bits)
                } else {
                    return Err(unknown());
                }
            }
        })
    }
}

/// Builds a diagonal density from integer weights over a common denominator,
/// converting to floating point once per entry.
fn rational_diagonal(numerators: &[u32], denominator: u32, dims: Vec<usize>) -> DensityMatrix {
    let d: Vec<f64> = numerators.iter().map(|&n| f64::from(n) / f64::from(denominator)).collect();
    DensityMatrix::new_unchecked(ComplexMatrix::diagonal(&d), dims).expect("shape fixed")
}

/// The density matrix of a named state.
pub fn make(tag: &NamedState) -> DensityMatrix {
    match tag {
        NamedState::ClassicalCorr => rational_diagonal(&[1, 0, 0, 1], 2, vec![2, 2]),
        NamedState::Eq1 => rational_diagonal(&[2, 1, 1, 2], 6, vec![2, 2]),
        NamedState::Eq3 => rational_diagonal(&[1, 2, 2, 1], 6, vec![2, 2]),
        NamedState::MaxMix(dims) => DensityMatrix::maximally_mixed(dims.clone()),
        pure => {
            let k = pure.ket().expect("remaining tags are pure");
            DensityMatrix::from_ket(&k, pure.dims()).expect("unit vector")
        }
    }
}

/// Parses a `*`-joined product of state ids.
pub fn parse_state_expr(expr: &str) -> Result<DensityMatrix> {
    let mut parts = expr.split('*').map(str::trim);
    let first: NamedState = parts.next().unwrap_or_default().parse()?;
    let mut rho = make(&first);
    for p in parts {
        rho = rho.tensor(&make(&p.parse()?));
    }
    if rho.dim() > crate::linalg::density::MAX_DIM {
        return Err(Error::OutOfRange(format!("`{expr}` has dimension {}", rho.dim())));
    }
    Ok(rho)
}

/// A weighted list of pure states realizing a density matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Ensemble {
    items: Vec<(f64, Ket)>,
    dims: Vec<usize>,
}

impl Ensemble {
    pub fn new(items: Vec<(f64, Ket)>, dims: Vec<usize>, tol: f64) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::InvalidEnsemble("no items".into()));
        }
        let total: usize = dims.iter().product();
        let mut sum = 0.0;
        for (p, k) in &items {
            if *p < 0.0 || !p.is_finite() {
                return Err(Error::InvalidEnsemble(format!("weight {p}")));
            }
            if k.dim() != total {
                return Err(Error::DimensionMismatch { expected: total, actual: k.dim() });
            }
            if (k.norm() - 1.0).abs() > tol {
                return Err(Error::InvalidEnsemble(format!("vector norm {}", k.norm())));
            }
            sum += p;
        }
        if (sum - 1.0).abs() > tol {
            return Err(Error::InvalidEnsemble(format!("weights sum to {sum}")));
        }
        Ok(Self { items, dims })
    }

    pub fn items(&self) -> &[(f64, Ket)] {
        &self.items
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

/// Σ p_i |ψ_i⟩⟨ψ_i|
pub fn ensemble_to_density(e: &Ensemble) -> DensityMatrix {
    let d: usize = e.dims.iter().product();
    let mut m = ComplexMatrix::zeros(d, d);
    for (p, k) in &e.items {
        m = &m + &k.projector().scale_real(*p);
    }
    DensityMatrix::new_unchecked(m, e.dims.clone()).expect("ensemble shapes checked")
}

/// The six-item preparation ensemble: |00⟩, |11⟩, |+0⟩, |−0⟩, |+i 1⟩, |−i 1⟩, each with weight ⅙.
pub fn ensemble_eq2() -> Ensemble {
    let zero = Ket::basis(2, 0);
    let one = Ket::basis(2, 1);
    let alice = [
        NamedState::Basis(vec![0]),
        NamedState::Basis(vec![1]),
        NamedState::Plus,
        NamedState::Minus,
        NamedState::PlusI,
        NamedState::MinusI,
    ];
    let bob = [&zero, &one, &zero, &zero, &one, &one];
    let items = alice
        .iter()
        .zip(bob)
        .map(|(a, b)| (1.0 / 6.0, a.ket().expect("pure").kron(b)))
        .collect();
    Ensemble::new(items, vec![2, 2], 1e-12).expect("fixed ensemble")
}

/// Alice's six possible single-qubit states in the preparation ensemble.
pub fn alice_state_set() -> [NamedState; 6] {
    [
        NamedState::Basis(vec![0]),
        NamedState::Basis(vec![1]),
        NamedState::Plus,
        NamedState::Minus,
        NamedState::PlusI,
        NamedState::MinusI,
    ]
}

/// 0.6|u⟩⟨u|⊗|0⟩⟨0| + 0.4|v⟩⟨v|⊗|1⟩⟨1| with |u⟩ = |0⟩ and |v⟩ = cos θ|0⟩ + sin θ|1⟩.
pub fn non_orthogonal_pair(theta: f64) -> DensityMatrix {
    let u = Ket::basis(2, 0);
    let v = Ket::from_real(&[theta.cos(), theta.sin()]);
    let e = Ensemble::new(
        vec![(0.6, u.kron(&Ket::basis(2, 0))), (0.4, v.kron(&Ket::basis(2, 1)))],
        vec![2, 2],
        1e-12,
    )
    .expect("unit vectors");
    ensemble_to_density(&e)
}

/// (1 − η) I/d + η |ψ⟩⟨ψ|
pub fn pseudo_pure(psi: &Ket, eta: f64, dims: Vec<usize>) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::OutOfRange(format!("eta = {eta} outside [0, 1]")));
    }
    let pure = DensityMatrix::from_ket(psi, dims.clone())?;
    pure.mix(&DensityMatrix::maximally_mixed(dims), eta)
}

/// Pseudo-pure mixing applied to an arbitrary density matrix.
pub fn pseudo_mix(rho: &DensityMatrix, eta: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::OutOfRange(format!("eta = {eta} outside [0, 1]")));
    }
    rho.mix(&DensityMatrix::maximally_mixed(rho.dims().to_vec()), eta)
}
