use super::*;
use crate::complex::DEFAULT_CROSSING_CAP as CAP;
use crate::diagram::{build_named, CombineKind};

fn knot(name: &str) -> InvolutiveDiagram {
    build_named(name).unwrap()
}

#[test]
fn labels() {
    let t = lee_labels(&knot("torus2(3)+")).unwrap();
    assert_eq!(t.labels.len(), 2);
    assert_ne!(t.labels[0], t.labels[1]);
    assert_eq!(lee_labels(&knot("unknot")).unwrap().labels, vec![LeeLabel::X]);
    let u = knot("unknot");
    let uu = u.combine(&u, CombineKind::DisjointUnion).unwrap();
    assert_eq!(lee_labels(&uu), Err(InvariantError::Disconnected(2)));
    let l = lee_labels_with_flips(&uu, &[false, true]).unwrap();
    assert_eq!(l.labels, vec![LeeLabel::X, LeeLabel::Y]);
}

#[test]
fn lee_cycles_of_unknot_and_trefoil() {
    let (c, lo, hi) = equivariant_lee_cycles(&knot("unknot"), RingSpec::F2HH, ConeMode::Tau, CAP).unwrap();
    assert_eq!(lo.support.len(), 1);
    let g = c.gens[lo.support[0] as usize];
    assert_eq!((g.labels, g.q, g.i), (1, false, 0));
    assert!(c.gens[hi.support[0] as usize].q);
    let (c, lo, hi) = equivariant_lee_cycles(&knot("torus2(3)+"), RingSpec::F2HH, ConeMode::Tau, CAP).unwrap();
    // X ⊗ (X + h·1): two generators
    assert_eq!(lo.support.len(), 2);
    assert!(lo.support.iter().all(|&g| c.gens[g as usize].i == 0));
    assert!(hi.support.iter().all(|&g| c.gens[g as usize].i == 1));
}

#[test]
fn small_s_values() {
    let r = equivariant_s(&knot("unknot"), CAP).unwrap();
    assert_eq!((r.s_lower, r.s_upper, r.d_lower, r.d_upper), (0, 0, 0, 0));
    let r = equivariant_s(&knot("torus2(3)-"), CAP).unwrap();
    assert_eq!((r.s_lower, r.s_upper, r.d_lower), (-2, -2, 1));
    for (k, s) in [(3, 2), (5, 4), (7, 6)] {
        let d = knot(&format!("torus2({k})+"));
        let r = invariants(&d, CAP).unwrap();
        assert_eq!((r.s_lower, r.s_upper, r.s_classic), (s, s, s));
        // positive diagram: Lee classes are not divisible
        assert_eq!((r.d_lower, r.d_upper), (0, 0));
    }
    assert_eq!(tower_s(&knot("torus2(3)+"), CAP).unwrap(), (2, 2, 2));
}

#[test]
fn pairing() {
    assert_eq!(pairing_check(&knot("unknot"), false, CAP).unwrap(), Poly::monomial(1));
    assert_eq!(pairing_check(&knot("unknot"), true, CAP).unwrap(), Poly::one());
    assert_eq!(pairing_check(&knot("torus2(3)+"), false, CAP).unwrap(), Poly::monomial(2));
    assert_eq!(pairing_check(&knot("torus2(3)+"), true, CAP).unwrap(), Poly::monomial(1));
}

#[test]
fn coloring_choices() {
    for name in ["unknot", "torus2(3)+", "torus2(5)-"] {
        let d = knot(name);
        assert!(coloring_independent(&d, CAP).unwrap(), "{name}");
        assert!(sigma_swaps_colorings(&d, CAP).unwrap(), "{name}");
    }
}

#[test]
fn cross_validation_on_torus_knots() {
    for name in ["torus2(3)+", "torus2(5)-"] {
        let rep = cross_validate(&knot(name), CAP).unwrap();
        assert!(rep.ok(), "{name}: {:?}", rep.failures);
    }
}

#[test]
fn tower_method_rejects_links() {
    let u = knot("unknot");
    let uu = u.combine(&u, CombineKind::DisjointUnion).unwrap();
    assert_eq!(tower_s(&uu, CAP), Err(InvariantError::NotAKnot(2)));
}
