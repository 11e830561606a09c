use super::*;
use crate::complex::{build_ckh, build_involutive, ConeMode, Variant, DEFAULT_CROSSING_CAP as CAP};
use crate::diagram::{build_named, InvolutiveDiagram};
use proptest::prelude::*;

fn p(bits: &[bool]) -> Poly {
    Poly::from_bits(bits)
}

fn h(k: usize) -> Poly {
    Poly::monomial(k)
}

fn bni_r(d: &InvolutiveDiagram, ring: RingSpec) -> GradedModule {
    homology_graded(&build_involutive(d, ring, ConeMode::Tau, Variant::Reduced, CAP).unwrap())
}

#[test]
fn snf_examples() {
    let s = snf(&PolyMatrix::identity(2));
    assert_eq!(s.invariants, vec![Poly::one(), Poly::one()]);
    let s = snf(&PolyMatrix::from_rows(vec![vec![h(1)]]));
    assert_eq!(s.invariants, vec![h(1)]);
    let m = PolyMatrix::from_rows(vec![vec![h(1), Poly::one()], vec![Poly::zero(), h(1)]]);
    let s = snf(&m);
    assert_eq!(s.invariants, vec![Poly::one(), h(2)]);
    assert_eq!(s.product(), m);
    assert!(s.left.determinant().is_one() && s.right.determinant().is_one());
}

#[test]
fn unknot_involutive_is_a_plus_qa() {
    let d = build_named("unknot").unwrap();
    let c = build_involutive(&d, RingSpec::F2HH, ConeMode::Tau, Variant::Unreduced, CAP).unwrap();
    let m = homology_graded(&c);
    assert_eq!(m.free, vec![(0, -1), (0, 1), (1, -1), (1, 1)]);
    assert!(m.torsion.is_empty());
}

#[test]
fn trefoil_reduced_bar_natan() {
    let d = build_named("torus2(3)+").unwrap();
    let m = bni_r(&d, RingSpec::F2HH);
    assert_eq!(m.free, vec![(0, 2), (1, 2)]);
    assert_eq!(m.torsion, vec![(3, 8, 1), (4, 8, 1)]);
    let k = bni_r(&d, RingSpec::F2H0);
    let cells: Vec<(i32, i32)> = k.torsion.iter().map(|&(i, j, _)| (i, j)).collect();
    assert_eq!(cells, vec![(0, 2), (1, 2), (2, 6), (3, 6), (3, 8), (4, 8)]);
}

#[test]
fn elimination_agrees_with_snf() {
    for name in ["unknot", "torus2(3)+", "torus2(3)-", "torus2(5)+"] {
        let d = build_named(name).unwrap();
        for ring in [RingSpec::F2H0, RingSpec::F2H1, RingSpec::F2HH] {
            for v in [Variant::Unreduced, Variant::Reduced] {
                let c = build_involutive(&d, ring, ConeMode::Tau, v, CAP).unwrap();
                let m = homology_graded(&c);
                assert_eq!(module_summary(&m, ring), snf_homology(&c).into_iter().filter(|(_, v)| v.0 > 0 || !v.1.is_empty()).collect(), "{name} {ring:?} {v:?}");
            }
        }
    }
}

#[test]
fn cycle_coordinates() {
    let d = build_named("unknot").unwrap();
    let c = build_ckh(&d, RingSpec::F2HH, CAP).unwrap();
    let x = c.gens.iter().position(|g| g.labels == 1).unwrap() as u32;
    let z = Cycle::new(vec![x], c.gens[x as usize].j);
    let co = class_coordinates(&c, &z).unwrap();
    assert_eq!(co.free.iter().filter(|p| p.is_one()).count(), 1);
    assert_eq!(divisibility(&c, &z).unwrap(), 0);
    // a boundary has zero class
    let t = build_ckh(&build_named("torus2(3)+").unwrap(), RingSpec::F2HH, CAP).unwrap();
    let src = (0..t.len()).find(|&g| !t.d.cols[g].is_empty()).unwrap();
    let b = Cycle::new(t.d.cols[src].clone(), t.gens[src].j);
    let co = class_coordinates(&t, &b).unwrap();
    assert!(co.is_zero());
    assert_eq!(divisibility_of(&co), Err(HomologyError::TorsionClass));
    // non-cycle rejected
    let g = Cycle::new(vec![src as u32], t.gens[src].j);
    assert_eq!(class_coordinates(&t, &g), Err(HomologyError::NotACycle));
}

/// Replaces basis vector `a` by `a + H^e b` (same homological degree, `j_b ≥ j_a`).
fn change_basis(c: &mut ChainComplexGraded, a: usize, b: usize) {
    let col_b = c.d.cols[b].clone();
    c.d.cols[a] = crate::sparse::xor_sorted(&c.d.cols[a], &col_b);
    for col in c.d.cols.iter_mut() {
        if col.binary_search(&(a as u32)).is_ok() {
            *col = crate::sparse::xor_sorted(col, &[b as u32]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn snf_is_a_factorisation(entries in proptest::collection::vec(proptest::collection::vec(any::<bool>(), 0..4), 9), r in 1usize..4, c in 1usize..4) {
        let rows: Vec<Vec<Poly>> = (0..r).map(|i| (0..c).map(|j| p(&entries[i * 3 + j])).collect()).collect();
        let m = PolyMatrix::from_rows(rows);
        let s = snf(&m);
        prop_assert_eq!(s.product(), m);
        prop_assert!(s.left.determinant().is_one());
        prop_assert!(s.right.determinant().is_one());
        for w in s.invariants.windows(2) {
            prop_assert!(w[1].div_rem(&w[0]).unwrap().1.is_zero());
        }
        for i in 0..s.diag.rows {
            for j in 0..s.diag.cols {
                if i != j {
                    prop_assert!(s.diag.get(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn homology_invariant_under_basis_change(seed in proptest::collection::vec((any::<u16>(), any::<u16>()), 1..40), which in 0usize..3) {
        let name = ["torus2(3)+", "torus2(3)-", "torus2(5)+"][which];
        let d = build_named(name).unwrap();
        let base = build_involutive(&d, RingSpec::F2HH, ConeMode::Tau, Variant::Unreduced, CAP).unwrap();
        let before = homology_graded(&base);
        let mut c = base.clone();
        let n = c.len();
        for (s, t) in seed {
            let (a, b) = (s as usize % n, t as usize % n);
            let (ga, gb) = (c.gens[a], c.gens[b]);
            if a != b && ga.i == gb.i && gb.j >= ga.j {
                change_basis(&mut c, a, b);
            }
        }
        prop_assert!(c.d.compose(&c.d).is_zero());
        prop_assert_eq!(homology_graded(&c), before);
    }
}
