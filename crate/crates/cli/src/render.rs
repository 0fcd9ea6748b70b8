use qhouse_core::linalg::ComplexMatrix;

fn entry(re: f64, im: f64) -> String {
    let clean = |x: f64| if x.abs() < 5e-7 { 0.0 } else { x };
    let (re, im) = (clean(re), clean(im));
    if im == 0.0 {
        format!("{re:.6}")
    } else {
        format!("{re:.6}{im:+.6}i")
    }
}

/// Fixed-width text rendering, one row per line.
pub fn format_matrix(m: &ComplexMatrix) -> String {
    let cells: Vec<Vec<String>> = (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| {
            let z = m.as_slice()[r * m.cols() + c];
            entry(z.re, z.im)
        }).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(0);
    let mut out = String::new();
    for row in cells {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str("  ");
        out.push_str(&line.join("  "));
        out.push('\n');
    }
    out
}

pub(crate) fn list(xs: &[f64]) -> String {
    xs.iter().map(|x| entry(*x, 0.0)).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_identity_aligned() {
        let text = format_matrix(&ComplexMatrix::identity(2));
        assert_eq!(text, "  1.000000  0.000000\n  0.000000  1.000000\n");
    }

    #[test]
    fn tiny_values_print_as_zero() {
        assert_eq!(entry(-1e-12, 3e-9), "0.000000");
        assert_eq!(entry(0.5, -0.5), "0.500000-0.500000i");
    }
}
