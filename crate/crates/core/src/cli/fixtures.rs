//! The six worked codes, as build inputs.

use super::specfile::{coeffs_of, ConstructionBlock, SpecFile};
use crate::polyid::{make_type_a_f, repunit, RationalPolynomial};

fn ints(c: &[i64]) -> Vec<super::specfile::Coeff> {
    coeffs_of(&RationalPolynomial::from_integers(c))
}

fn linear_residue_code(d: usize) -> SpecFile {
    let total = 9 * (d - 1);
    SpecFile {
        construction: ConstructionBlock::TypeB { m: 3 },
        q: 2,
        total,
        d,
        t: 1,
        f_coeffs: Some(coeffs_of(&repunit(d).pow(3))),
        p_polys: vec![ints(&[0, 3]), ints(&[total as i64, -3])],
        t_check: None,
    }
}

/// `example1.json` … `example6.json` in order.
pub fn example_specs() -> Vec<(String, SpecFile)> {
    // (1 + x)(x - 1)^5
    let sign_split = coeffs_of(&make_type_a_f(&RationalPolynomial::from_integers(&[1, 1]), 5));
    let specs = vec![
        SpecFile {
            construction: ConstructionBlock::TypeA { m: 5 },
            q: 2,
            total: 19,
            d: 2,
            t: 1,
            f_coeffs: Some(sign_split.clone()),
            p_polys: vec![ints(&[18, -3]), ints(&[1, 3])],
            t_check: None,
        },
        SpecFile {
            construction: ConstructionBlock::TypeA { m: 5 },
            q: 3,
            total: 108,
            d: 2,
            t: 1,
            f_coeffs: Some(sign_split),
            p_polys: vec![ints(&[108, 0, -3]), ints(&[0, 0, 3]), ints(&[0])],
            t_check: None,
        },
        // the general residue-class family at t = 1, d = 2
        linear_residue_code(2),
        linear_residue_code(3),
        linear_residue_code(4),
        linear_residue_code(5),
    ];
    specs
        .into_iter()
        .enumerate()
        .map(|(i, s)| (format!("example{}.json", i + 1), s))
        .collect()
}
