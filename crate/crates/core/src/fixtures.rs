//! Worked examples embedded as `QT1` documents: exact inputs and the
//! four-decimal outputs printed alongside them.
//!
//! Three printed values needed a reading, noted in the file headers:
//! a stray `v` after an `i`-component, a bare `j` for the unit `j`, and a
//! five-digit `0.01278` stored as `0.0128`.

use crate::io::parse_qt;
use crate::tensor::QTensor;

/// `(file name, contents)` for every embedded fixture.
pub const FILES: &[(&str, &str)] = &[
    ("mp_a.qt", include_str!("../fixtures/mp_a.qt")),
    ("mp_pinv_printed.qt", include_str!("../fixtures/mp_pinv_printed.qt")),
    ("drazin_a.qt", include_str!("../fixtures/drazin_a.qt")),
    ("drazin_printed.qt", include_str!("../fixtures/drazin_printed.qt")),
    ("along_a.qt", include_str!("../fixtures/along_a.qt")),
    ("along_b.qt", include_str!("../fixtures/along_b.qt")),
    ("along_c.qt", include_str!("../fixtures/along_c.qt")),
    ("along_z_printed.qt", include_str!("../fixtures/along_z_printed.qt")),
];

/// Loads a fixture by file name.
///
/// # Panics
/// If `name` is not in [`FILES`]; the embedded documents themselves are
/// checked by the test suite.
pub fn load(name: &str) -> QTensor {
    let (_, text) = FILES
        .iter()
        .find(|(n, _)| *n == name)
        .unwrap_or_else(|| panic!("no fixture named {name}"));
    parse_qt(text).expect("embedded fixture parses")
}

/// 2×3×4 input of the Moore–Penrose example.
pub fn mp_input() -> QTensor {
    load("mp_a.qt")
}

/// Printed `A†`, 3×2×4.
pub fn mp_printed() -> QTensor {
    load("mp_pinv_printed.qt")
}

/// 3×3×4 input of the Drazin example.
pub fn drazin_input() -> QTensor {
    load("drazin_a.qt")
}

/// Printed `A^D`, 3×3×4.
pub fn drazin_printed() -> QTensor {
    load("drazin_printed.qt")
}

/// `(A, B, C)` of the inverse-along example: 3×3×4, 3×2×4, 3×3×4.
pub fn along_inputs() -> (QTensor, QTensor, QTensor) {
    (load("along_a.qt"), load("along_b.qt"), load("along_c.qt"))
}

/// Printed right inverse along `(B, C)`, 3×3×4.
pub fn along_printed() -> QTensor {
    load("along_z_printed.qt")
}

/// Largest componentwise absolute difference between two tensors of equal
/// shape.
pub fn max_abs_deviation(a: &QTensor, b: &QTensor) -> f64 {
    assert_eq!(a.dims(), b.dims(), "shapes differ");
    a.entries()
        .iter()
        .zip(b.entries())
        .flat_map(|(p, q)| {
            let (p, q) = (p.components(), q.components());
            (0..4).map(move |t| (p[t] - q[t]).abs())
        })
        .fold(0.0, f64::max)
}
