//! Small named functions used as regression cases.

use alloc::vec;
use alloc::vec::Vec;

use super::function::MinMaxFunction;
use crate::numeric::{int, Rational};

fn term(offset: i64, gradient: &[i64]) -> (Rational, Vec<Rational>) {
    (int(offset), gradient.iter().map(|&g| int(g)).collect())
}

/// `min{1, max{0, x}}` on the real line.
pub fn robinson_4_2() -> MinMaxFunction {
    MinMaxFunction::from_terms(1, vec![vec![term(1, &[0])], vec![term(0, &[0]), term(0, &[1])]])
        .expect("valid fixture")
}

/// `min{max{0, x}, max{1, x - 1}}` on the real line.
pub fn robinson_4_3() -> MinMaxFunction {
    MinMaxFunction::from_terms(
        1,
        vec![vec![term(0, &[0]), term(0, &[1])], vec![term(1, &[0]), term(-1, &[1])]],
    )
    .expect("valid fixture")
}

/// `min{max{0, x1}, max{1, x1 - 1}}` on the plane.
pub fn flat_pieces_4_10() -> MinMaxFunction {
    MinMaxFunction::from_terms(
        2,
        vec![
            vec![term(0, &[0, 0]), term(0, &[1, 0])],
            vec![term(1, &[0, 0]), term(-1, &[1, 0])],
        ],
    )
    .expect("valid fixture")
}

/// `min{|x1| + |x2|, 1 + |x1|}`.
pub fn example_4_12() -> MinMaxFunction {
    MinMaxFunction::from_terms(
        2,
        vec![
            vec![term(0, &[1, 1]), term(0, &[1, -1]), term(0, &[-1, 1]), term(0, &[-1, -1])],
            vec![term(1, &[1, 0]), term(1, &[-1, 0])],
        ],
    )
    .expect("valid fixture")
}

/// The points `(n, n^2)` for `n = 1..=count`.
pub fn example_4_12_points(count: i64) -> Vec<Vec<Rational>> {
    (1..=count).map(|n| vec![int(n), int(n * n)]).collect()
}

/// `min{max{0, x1}, max{1 + x2, 1 - x2}}`.
pub fn final_4_3_pair() -> MinMaxFunction {
    MinMaxFunction::from_terms(
        2,
        vec![
            vec![term(0, &[0, 0]), term(0, &[1, 0])],
            vec![term(1, &[0, 1]), term(1, &[0, -1])],
        ],
    )
    .expect("valid fixture")
}
