mod common;

use common::{discord_cross_validation, CrossValidation};

#[test]
fn block_criterion_agrees_with_basis_search() {
    let CrossValidation { total, disagreements, boundary, zero_count } = discord_cross_validation(0xD15C, 500);
    for b in &boundary {
        eprintln!("boundary: {b}");
    }
    assert_eq!(total, 500);
    assert!(disagreements.is_empty(), "{disagreements:#?}");
    assert!((boundary.len() as f64) < 0.01 * total as f64);
    assert!(zero_count > 100 && zero_count < 400, "{zero_count}");
}
