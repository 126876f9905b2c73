//! The directed algebra of the exceptional collection on the three-point
//! blow-up of the projective plane.
//!
//! Objects 1..3 are the shifted exceptional-divisor sheaves, 4..6 the
//! pulled-back plane bundles. With the blown-up points at the coordinate
//! points of `P(V)`, the nonzero hom spaces are
//!
//! * `hom(i, 4) = <x_i>`, `hom(i, 5) = <x_j* : j != i>`, `hom(i, 6) = <e_i>`
//!   for `i = 1, 2, 3`,
//! * `hom(4, 5) = Lambda^2 V*`, `hom(4, 6) = V*`, `hom(5, 6) = V`,
//!
//! and every composition is an evaluation or an interior product:
//! `(v, w) -> -i_v w` into `hom(i, 5)`, `(v, w) -> w(v)` into `hom(i, 6)`,
//! `(w, v) -> w(v)` into `hom(i, 6)`, and `(w, v) -> i_v w` into
//! `hom(4, 6)`, with `i_v (a ^ b) = a(v) b - b(v) a`.
//!
//! [`build_blowup_algebra`] derives all structure constants from these
//! formulas; [`appendix_tables`] transcribes the published composition
//! tables verbatim. The two differ in exactly one cell (see
//! [`appendix_tables`]), which [`crate::algebra::diff_algebras`] surfaces.

use crate::algebra::{DirectedAlgebra, Label, LinComb};

fn l(s: &str) -> Label {
    Label::new(s)
}

/// Wedge basis in the published cyclic order.
const WEDGES: [(&str, usize, usize); 3] = [("x12*", 0, 1), ("x23*", 1, 2), ("x31*", 2, 0)];
const DUALS: [&str; 3] = ["x1*", "x2*", "x3*"];
const VECTORS: [&str; 3] = ["x1", "x2", "x3"];
const POINTS: [&str; 3] = ["e1", "e2", "e3"];

/// `i_{x_c}(x_a* ^ x_b*) = delta_ac x_b* - delta_bc x_a*`.
fn interior_product(a: usize, b: usize, c: usize) -> LinComb {
    let mut out = LinComb::zero();
    if a == c {
        out.add_term(1, l(DUALS[b]));
    }
    if b == c {
        out.add_term(-1, l(DUALS[a]));
    }
    out
}

fn hom_spaces() -> DirectedAlgebra {
    let mut alg = DirectedAlgebra::new(6);
    for i in 0..3 {
        alg.set_hom(i, 3, vec![l(VECTORS[i])]);
        let duals: Vec<Label> = (0..3).filter(|&j| j != i).map(|j| l(DUALS[j])).collect();
        alg.set_hom(i, 4, duals);
        alg.set_hom(i, 5, vec![l(POINTS[i])]);
    }
    alg.set_hom(3, 4, WEDGES.iter().map(|&(w, _, _)| l(w)).collect());
    alg.set_hom(3, 5, DUALS.iter().map(|&d| l(d)).collect());
    alg.set_hom(4, 5, VECTORS.iter().map(|&v| l(v)).collect());
    alg
}

/// The algebra computed from the composition formulas.
pub fn build_blowup_algebra() -> DirectedAlgebra {
    let mut alg = hom_spaces();

    // hom(i,4) x hom(4,5) -> hom(i,5): (v, w) -> -i_v w.
    for i in 0..3 {
        for (b, &(_, wa, wb)) in WEDGES.iter().enumerate() {
            let mut out = LinComb::zero();
            out.add_scaled(-1, &interior_product(wa, wb, i));
            alg.set_product(i, 3, 4, 0, b, out);
        }
    }

    // hom(i,4) x hom(4,6) -> hom(i,6): (v, w) -> w(v).
    for (i, point) in POINTS.iter().enumerate() {
        for j in 0..3 {
            let out = if j == i {
                LinComb::single(1, l(point))
            } else {
                LinComb::zero()
            };
            alg.set_product(i, 3, 5, 0, j, out);
        }
    }

    // hom(i,5) x hom(5,6) -> hom(i,6): (w, v) -> w(v).
    for (i, point) in POINTS.iter().enumerate() {
        let duals: Vec<usize> = (0..3).filter(|&j| j != i).collect();
        for (a, &j) in duals.iter().enumerate() {
            for k in 0..3 {
                let out = if j == k {
                    LinComb::single(1, l(point))
                } else {
                    LinComb::zero()
                };
                alg.set_product(i, 4, 5, a, k, out);
            }
        }
    }

    // hom(4,5) x hom(5,6) -> hom(4,6): (w, v) -> i_v w.
    for (a, &(_, wa, wb)) in WEDGES.iter().enumerate() {
        for c in 0..3 {
            alg.set_product(3, 4, 5, a, c, interior_product(wa, wb, c));
        }
    }

    alg
}

/// The algebra transcribed verbatim from the published composition tables.
///
/// The tables follow the formulas of [`build_blowup_algebra`] except in one
/// cell: the `Hom(E3,E5) x Hom(E5,E6)` table prints `x1* . x1 = e2`, while
/// the evaluation formula forces `e3` (the only basis element of
/// `hom(3, 6)`). The printed value is preserved here and the formula value
/// in [`build_blowup_algebra`], so the diff between the two constructors
/// pins down the erratum.
pub fn appendix_tables() -> DirectedAlgebra {
    let mut alg = hom_spaces();

    // Row-major entries per printed table; rows are the left factor's basis.
    // 0 stands for the zero combination.
    let set_table = |alg: &mut DirectedAlgebra,
                     (i, j, k): (usize, usize, usize),
                     entries: &[&[&str]]| {
        for (a, row) in entries.iter().enumerate() {
            for (b, &cell) in row.iter().enumerate() {
                let out = match cell {
                    "0" => LinComb::zero(),
                    spec => {
                        let (coeff, name) = match spec.strip_prefix('-') {
                            Some(rest) => (-1, rest),
                            None => (1, spec),
                        };
                        LinComb::single(coeff, l(name))
                    }
                };
                alg.set_product(i, j, k, a, b, out);
            }
        }
    };

    // Hom(E1,E4) x Hom(E4,E5) -> Hom(E1,E5)
    set_table(&mut alg, (0, 3, 4), &[&["-x2*", "0", "x3*"]]);
    // Hom(E1,E4) x Hom(E4,E6) -> Hom(E1,E6)
    set_table(&mut alg, (0, 3, 5), &[&["e1", "0", "0"]]);
    // Hom(E1,E5) x Hom(E5,E6) -> Hom(E1,E6)
    set_table(&mut alg, (0, 4, 5), &[&["0", "e1", "0"], &["0", "0", "e1"]]);
    // Hom(E2,E4) x Hom(E4,E5) -> Hom(E2,E5)
    set_table(&mut alg, (1, 3, 4), &[&["x1*", "-x3*", "0"]]);
    // Hom(E2,E4) x Hom(E4,E6) -> Hom(E2,E6)
    set_table(&mut alg, (1, 3, 5), &[&["0", "e2", "0"]]);
    // Hom(E2,E5) x Hom(E5,E6) -> Hom(E2,E6)
    set_table(&mut alg, (1, 4, 5), &[&["e2", "0", "0"], &["0", "0", "e2"]]);
    // Hom(E3,E4) x Hom(E4,E5) -> Hom(E3,E5)
    set_table(&mut alg, (2, 3, 4), &[&["0", "x2*", "-x1*"]]);
    // Hom(E3,E4) x Hom(E4,E6) -> Hom(E3,E6)
    set_table(&mut alg, (2, 3, 5), &[&["0", "0", "e3"]]);
    // Hom(E3,E5) x Hom(E5,E6) -> Hom(E3,E6); first row prints the erratum.
    set_table(&mut alg, (2, 4, 5), &[&["e2", "0", "0"], &["0", "e3", "0"]]);
    // Hom(E4,E5) x Hom(E5,E6) -> Hom(E4,E6)
    set_table(
        &mut alg,
        (3, 4, 5),
        &[
            &["x2*", "-x1*", "0"],
            &["0", "x3*", "-x2*"],
            &["-x3*", "0", "x1*"],
        ],
    );

    alg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_directed_associativity, diff_algebras};

    fn compose_labels(
        alg: &DirectedAlgebra,
        (i, j, k): (usize, usize, usize),
        a: &str,
        b: &str,
    ) -> LinComb {
        let ai = alg.label_index(i, j, &l(a)).unwrap();
        let bi = alg.label_index(j, k, &l(b)).unwrap();
        alg.compose_basis(i, j, k, ai, bi)
    }

    #[test]
    fn published_example_compositions() {
        let alg = build_blowup_algebra();
        // x1 . (x1* ^ x2*) = -x2*
        assert_eq!(
            compose_labels(&alg, (0, 3, 4), "x1", "x12*"),
            LinComb::single(-1, l("x2*"))
        );
        // x3 . x1* = 0
        assert_eq!(
            compose_labels(&alg, (2, 3, 5), "x3", "x1*"),
            LinComb::zero()
        );
        // x1 . x1* = e1
        assert_eq!(
            compose_labels(&alg, (0, 3, 5), "x1", "x1*"),
            LinComb::single(1, l("e1"))
        );
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn hom_dimension_pattern() {
        let alg = build_blowup_algebra();
        let dims = alg.hom_dimensions();
        for i in 0..3 {
            assert_eq!(dims[i][3], 1);
            assert_eq!(dims[i][4], 2);
            assert_eq!(dims[i][5], 1);
            for j in 0..3 {
                if i != j {
                    assert_eq!(dims[i][j], 0);
                }
            }
        }
        assert_eq!(dims[3][4], 3);
        assert_eq!(dims[3][5], 3);
        assert_eq!(dims[4][5], 3);
        assert_eq!(dims[1][0], 0);
        assert_eq!(alg.total_dimension(), 27);
    }

    #[test]
    fn formula_algebra_is_associative() {
        let violations = check_directed_associativity(&build_blowup_algebra());
        assert!(violations.is_empty(), "{violations:?}");
    }

    #[test]
    fn example_associativity_chain() {
        // (x1 . (x1* ^ x2*)) . x2 = -e1 = x1 . i_{x2}(x1* ^ x2*).
        let alg = build_blowup_algebra();
        let ab = compose_labels(&alg, (0, 3, 4), "x1", "x12*");
        let left = alg
            .compose(0, 4, 5, &ab, &LinComb::single(1, l("x2")))
            .unwrap();
        let bc = compose_labels(&alg, (3, 4, 5), "x12*", "x2");
        let right = alg
            .compose(0, 3, 5, &LinComb::single(1, l("x1")), &bc)
            .unwrap();
        assert_eq!(left, LinComb::single(-1, l("e1")));
        assert_eq!(left, right);
    }

    #[test]
    fn appendix_prints_the_erratum_cell() {
        let alg = appendix_tables();
        assert_eq!(
            compose_labels(&alg, (2, 4, 5), "x1*", "x1"),
            LinComb::single(1, l("e2"))
        );
        // Two more table spot checks.
        assert_eq!(
            compose_labels(&alg, (3, 4, 5), "x23*", "x3"),
            LinComb::single(-1, l("x2*"))
        );
        assert_eq!(
            compose_labels(&alg, (1, 3, 4), "x2", "x23*"),
            LinComb::single(-1, l("x3*"))
        );
    }

    #[test]
    fn diff_finds_exactly_the_erratum() {
        let report = diff_algebras(&build_blowup_algebra(), &appendix_tables()).unwrap();
        assert_eq!(report.mismatches.len(), 1, "{report:?}");
        let m = &report.mismatches[0];
        assert_eq!(m.triple, (3, 5, 6));
        assert_eq!(m.left, l("x1*"));
        assert_eq!(m.right, l("x1"));
        assert_eq!(m.expected, LinComb::single(1, l("e3")));
        assert_eq!(m.actual, LinComb::single(1, l("e2")));
    }

    #[test]
    fn appendix_algebra_violates_associativity_on_the_erratum_chain() {
        let violations = check_directed_associativity(&appendix_tables());
        assert!(!violations.is_empty());
        assert!(violations.iter().all(|v| v.chain == (3, 4, 5, 6)));
    }

    #[test]
    fn all_structure_constants_are_signs() {
        for alg in [build_blowup_algebra(), appendix_tables()] {
            for (i, j, k) in alg.composable_triples() {
                for a in 0..alg.hom_dim(i, j) {
                    for b in 0..alg.hom_dim(j, k) {
                        for (c, _) in &alg.compose_basis(i, j, k, a, b).0 {
                            assert!(c.abs() == 1);
                        }
                    }
                }
            }
        }
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn interior_product_is_the_basis_contraction() {
        // i_v(a ^ b) = a(v) b - b(v) a, exhaustively on basis triples.
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let mut expect = LinComb::zero();
                    if a == c {
                        expect.add_term(1, l(DUALS[b]));
                    }
                    if b == c {
                        expect.add_term(-1, l(DUALS[a]));
                    }
                    assert_eq!(interior_product(a, b, c), expect);
                }
            }
        }
    }

    #[test]
    fn degrees_all_zero() {
        let alg = build_blowup_algebra();
        for i in 0..6 {
            for j in (i + 1)..6 {
                for idx in 0..alg.hom_dim(i, j) {
                    assert_eq!(alg.generator_degree(i, j, idx), 0);
                }
            }
        }
    }
}
