//! Built-in example codes.

use crate::error::Result;
use crate::formations::{Formation, Submodule, SubmoduleCertificate};
use crate::forms::LinkingForm;
use crate::modules::Presentation;
use crate::ring::{parse_int_poly, IntPoly};
use crate::witt::FiniteQuadraticForm;

/// `coker(q · I_n)` over `Z[x_1^±, ..., x_dim^±]`: `n` qudits of dimension `q` per site.
pub fn qudits(dim: usize, q: i64, n: usize) -> Presentation {
    Presentation::scalar(dim, n, q).expect("nonzero scalar")
}

/// `H^-(M)` for `M = coker(q · I_n)`.
pub fn hyperbolic(dim: usize, q: i64, n: usize) -> LinkingForm {
    LinkingForm::standard(&qudits(dim, q, n), -1).expect("standard form")
}

/// The product code `(H^-(M); M, M)`.
pub fn product(dim: usize, q: i64, n: usize) -> Formation {
    let m = Submodule::coordinate(2 * n, dim, 0..n).with_certificate(SubmoduleCertificate {
        submodule: qudits(dim, q, n),
        quotient: qudits(dim, q, n),
    });
    Formation::new(hyperbolic(dim, q, n), m.clone(), m).expect("product code")
}

/// `(H^-(M); M, M^∨)`, whose ground state is the uniform superposition.
pub fn dual_product(dim: usize, q: i64, n: usize) -> Formation {
    let m = Submodule::coordinate(2 * n, dim, 0..n);
    let f = Submodule::coordinate(2 * n, dim, n..2 * n).with_certificate(SubmoduleCertificate {
        submodule: qudits(dim, q, n).s_dual(),
        quotient: qudits(dim, q, n),
    });
    Formation::new(hyperbolic(dim, q, n), m, f).expect("dual product code")
}

fn poly(text: &str, dim: usize) -> IntPoly {
    parse_int_poly(text, dim).expect("built-in polynomial")
}

fn column(entries: &[&str], dim: usize) -> Vec<IntPoly> {
    entries.iter().map(|t| poly(t, dim)).collect()
}

/// Qubit cluster chain: `Z_{j-1} X_j Z_{j+1}`.
pub fn cluster_like() -> Formation {
    let f = Submodule::new(2, 1, vec![column(&["1", "x1 + x1^-1"], 1)]).expect("generator");
    Formation::new(hyperbolic(1, 2, 1), Submodule::coordinate(2, 1, 0..1), f).expect("cluster chain")
}

/// Toric code on the square lattice, two qubits per site.
pub fn toric() -> Formation {
    let star = column(&["1 + x1", "1 + x2", "0", "0"], 2);
    let plaquette = column(&["0", "0", "1 + x2^-1", "1 + x1^-1"], 2);
    let f = Submodule::new(4, 2, vec![star, plaquette]).expect("generators");
    Formation::new(hyperbolic(2, 2, 2), Submodule::coordinate(4, 2, 0..2), f).expect("toric code")
}

/// One qubit per site of a chain, presented as `coker(2)` over `Z[x^±]`.
pub fn z2_chain() -> Presentation {
    qudits(1, 2, 1)
}

/// `q(x) = x^2/4` on `Z/2`.
pub fn semion_d0() -> FiniteQuadraticForm {
    FiniteQuadraticForm::semion()
}

/// Cyclic lagrangians `<(a, b)>` together with `<(2, 0), (0, 2)>` in `H^-(Z/4)`.
pub fn z4_lagrangians() -> Vec<Submodule> {
    let mut out: Vec<Submodule> = [(1, 0), (0, 1), (1, 1), (1, 2), (1, 3), (2, 1)]
        .iter()
        .map(|&(a, b)| Submodule::new(2, 0, vec![vec![IntPoly::from_i64(0, a), IntPoly::from_i64(0, b)]]).expect("generator"))
        .collect();
    out.push(
        Submodule::new(
            2,
            0,
            vec![
                vec![IntPoly::from_i64(0, 2), IntPoly::from_i64(0, 0)],
                vec![IntPoly::from_i64(0, 0), IntPoly::from_i64(0, 2)],
            ],
        )
        .expect("generators"),
    );
    out
}

/// `(H^-(Z/4); M, F)` with `M, F` from [`z4_lagrangians`].
pub fn z4_formation(m: &Submodule, f: &Submodule) -> Result<Formation> {
    Formation::new(hyperbolic(0, 4, 1), m.clone(), f.clone())
}

/// Names accepted by the command line.
pub const NAMES: &[&str] = &["product", "dual-product", "cluster-like", "toric", "z2-chain", "semion-d0"];
