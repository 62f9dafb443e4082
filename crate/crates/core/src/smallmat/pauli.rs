use num_complex::Complex64;

use super::ComplexMatrix;

/// Single-qubit operator basis. `Plus`/`Minus` use the unnormalized ladder
/// convention `σ^± = σ^x ± iσ^y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PauliAxis {
    X,
    Y,
    Z,
    Plus,
    Minus,
    Identity,
}

pub fn pauli(axis: PauliAxis) -> ComplexMatrix {
    let o = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let two = Complex64::new(2.0, 0.0);
    let entries = match axis {
        PauliAxis::X => vec![o, one, one, o],
        PauliAxis::Y => vec![o, -i, i, o],
        PauliAxis::Z => vec![one, o, o, -one],
        PauliAxis::Plus => vec![o, two, o, o],
        PauliAxis::Minus => vec![o, o, two, o],
        PauliAxis::Identity => vec![one, o, o, one],
    };
    ComplexMatrix::from_vec(entries).expect("2x2 literal")
}
