use std::collections::BTreeMap;

use super::*;
use crate::diagram::{build_named, parse_diagram, Axis, Plat};

const CAP: usize = DEFAULT_CROSSING_CAP;

fn unknot() -> InvolutiveDiagram {
    build_named("unknot").unwrap()
}

fn kink(positive: bool) -> InvolutiveDiagram {
    let d = Plat::parse(2, "0-1 | 0+ | 0-1", Axis::Horizontal, Mode::StrongInversion).unwrap().build().unwrap();
    if (d.writhe() > 0) == positive {
        d
    } else {
        d.mirror()
    }
}

/// Plain 𝔽₂ rank by dense row reduction.
fn f2_rank(rows: usize, cols: &[Vec<u32>]) -> usize {
    let mut m: Vec<Vec<bool>> = cols
        .iter()
        .map(|c| {
            let mut v = vec![false; rows];
            for &r in c {
                v[r as usize] = true;
            }
            v
        })
        .collect();
    let mut rank = 0;
    for r in 0..rows {
        let Some(p) = (rank..m.len()).find(|&k| m[k][r]) else { continue };
        m.swap(rank, p);
        for k in 0..m.len() {
            if k != rank && m[k][r] {
                let src = m[rank].clone();
                for (a, b) in m[k].iter_mut().zip(src) {
                    *a ^= b;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers over 𝔽₂ per homological degree, ignoring `j`.
fn f2_betti(c: &ChainComplexGraded) -> BTreeMap<i32, usize> {
    let mut by_i: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for (g, gen) in c.gens.iter().enumerate() {
        by_i.entry(gen.i).or_default().push(g);
    }
    let rank_from = |i: i32| -> usize {
        let Some(src) = by_i.get(&i) else { return 0 };
        let cols: Vec<Vec<u32>> = src.iter().map(|&g| c.d.cols[g].clone()).collect();
        f2_rank(c.len(), &cols)
    };
    by_i.iter().map(|(&i, gs)| (i, gs.len() - rank_from(i) - rank_from(i - 1))).filter(|&(_, b)| b > 0).collect()
}

fn raw_dims(c: &ChainComplexGraded) -> BTreeMap<(i32, i32), usize> {
    let mut out = BTreeMap::new();
    for g in &c.gens {
        *out.entry((g.i, g.j)).or_insert(0) += 1;
    }
    out
}

#[test]
fn unknot_generators() {
    let c = build_ckh(&unknot(), RingSpec::F2H0, CAP).unwrap();
    let mut gr: Vec<(i32, i32)> = c.gens.iter().map(|g| (g.i, g.j)).collect();
    gr.sort();
    assert_eq!(gr, vec![(0, -1), (0, 1)]);
    assert!(c.d.is_zero());
}

#[test]
fn kink_has_six_generators_and_unknot_homology() {
    for pos in [true, false] {
        for ring in [RingSpec::F2H0, RingSpec::F2H1, RingSpec::F2HH] {
            let c = build_ckh(&kink(pos), ring, CAP).unwrap();
            assert_eq!(c.len(), 6);
            assert!(verify_complex(&c).ok(), "{:?}", verify_complex(&c));
            assert_eq!(f2_betti(&c), BTreeMap::from([(0, 2)]), "{pos} {ring:?}");
        }
        let c = build_ckh(&kink(pos), RingSpec::F2H0, CAP).unwrap();
        // Kh of the unknot lives at (0, ±1) whatever the diagram
        let m = crate::homology::homology_graded(&c);
        let mut js: Vec<(i32, i32)> = m.torsion.iter().map(|&(i, j, _)| (i, j)).collect();
        js.sort();
        assert_eq!(js, vec![(0, -1), (0, 1)]);
    }
}

#[test]
fn trefoil_generator_count() {
    let d = build_named("torus2(3)+").unwrap();
    let c = build_ckh(&d, RingSpec::F2HH, CAP).unwrap();
    let expect: usize = (0..8u64).map(|b| 1usize << d.resolve_state(&State::new(b, 3)).circle_count).sum();
    assert_eq!(c.len(), expect);
    assert!(c.d.compose(&c.d).is_zero());
    assert!(verify_complex(&c).ok());
}

#[test]
fn unknot_cone() {
    let c = build_involutive(&unknot(), RingSpec::F2HH, ConeMode::Tau, Variant::Unreduced, CAP).unwrap();
    assert_eq!(c.len(), 4);
    assert!(c.d.is_zero());
    let r = build_involutive(&unknot(), RingSpec::F2HH, ConeMode::Tau, Variant::Reduced, CAP).unwrap();
    let mut gr: Vec<(i32, i32)> = r.gens.iter().map(|g| (g.i, g.j + r.q_shift)).collect();
    gr.sort();
    assert_eq!(gr, vec![(0, 0), (1, 0)]);
}

#[test]
fn errors() {
    let t = build_named("torus2(3)+").unwrap();
    assert_eq!(build_ckh(&t, RingSpec::F2H0, 2).unwrap_err(), ComplexError::ResourceLimit { crossings: 3, cap: 2 });
    let nob = t.with_basepoint(None).unwrap();
    assert_eq!(
        build_involutive(&nob, RingSpec::F2H0, ConeMode::Tau, Variant::Reduced, CAP).unwrap_err(),
        ComplexError::MissingBasepoint
    );
    assert_eq!(
        build_involutive(&t, RingSpec::F2H0, ConeMode::SigmaTau, Variant::Reduced, CAP).unwrap_err(),
        ComplexError::SigmaTauReduced
    );
    assert!(kappa_map(&nob, RingSpec::F2HH, CAP).is_err());
}

#[test]
fn fault_injection_is_reported() {
    let d = build_named("torus2(3)+").unwrap();
    let mut c = build_involutive(&d, RingSpec::F2HH, ConeMode::Tau, Variant::Unreduced, CAP).unwrap();
    assert!(verify_complex(&c).ok());
    let (r, col) = c.d.entries().nth(3).unwrap();
    c.d.toggle(r, col);
    let rep = verify_complex(&c);
    assert!(rep.failures.iter().any(|f| f.contains("d² ≠ 0")), "{rep:?}");
}

#[test]
fn structure_on_small_diagrams() {
    for name in ["unknot", "torus2(3)+", "torus2(3)-", "torus2(5)+"] {
        let d = build_named(name).unwrap();
        for ring in [RingSpec::F2H0, RingSpec::F2H1, RingSpec::F2HH] {
            for v in [Variant::Unreduced, Variant::Reduced, Variant::Coreduced] {
                let c = build_involutive(&d, ring, ConeMode::Tau, v, CAP).unwrap();
                let rep = verify_complex(&c);
                assert!(rep.ok(), "{name} {ring:?} {v:?} {rep:?}");
            }
            let full = build_involutive(&d, ring, ConeMode::Tau, Variant::Unreduced, CAP).unwrap();
            let red = build_involutive(&d, ring, ConeMode::Tau, Variant::Reduced, CAP).unwrap();
            let cor = build_involutive(&d, ring, ConeMode::Tau, Variant::Coreduced, CAP).unwrap();
            let mut sum = raw_dims(&red);
            for (k, v) in raw_dims(&cor) {
                *sum.entry(k).or_insert(0) += v;
            }
            assert_eq!(raw_dims(&full), sum, "{name}");
        }
        let k = kappa_map(&d, RingSpec::F2HH, CAP).unwrap();
        assert!(k.homotopy_holds && k.section_is_chain_map, "{name}");
        let k0 = kappa_map(&d, RingSpec::F2H0, CAP).unwrap();
        assert!(k0.homotopy_holds && k0.section_is_chain_map, "{name}");
    }
}

#[test]
fn unknot_kappa_vanishes() {
    let k = kappa_map(&unknot(), RingSpec::F2HH, CAP).unwrap();
    assert!(k.kappa.matrix.is_zero());
    assert!(k.f.is_zero());
}

#[test]
fn mirror_duality_of_dimensions() {
    for name in ["torus2(3)+", "torus2(5)-"] {
        let d = build_named(name).unwrap();
        let a = raw_dims(&build_involutive(&d, RingSpec::F2H0, ConeMode::Tau, Variant::Unreduced, CAP).unwrap());
        let b = raw_dims(&build_involutive(&d.mirror(), RingSpec::F2H0, ConeMode::Tau, Variant::Unreduced, CAP).unwrap());
        let flipped: BTreeMap<(i32, i32), usize> = a.iter().map(|(&(i, j), &n)| ((1 - i, -j), n)).collect();
        assert_eq!(b, flipped, "{name}");
    }
}

#[test]
fn sigma_tau_cone_on_periodic_link() {
    // Hopf link drawn with its 2-periodic rotation: crossings swapped
    let text = "mode periodic\nx a + u:1,2 o:3,4\nx b + u:4,3 o:2,1\ntau 1 4\ntau 2 3\n";
    let d = parse_diagram(text).unwrap();
    for mode in [ConeMode::Tau, ConeMode::SigmaTau] {
        let c = build_involutive(&d, RingSpec::F2HH, mode, Variant::Unreduced, CAP).unwrap();
        let rep = verify_complex(&c);
        assert!(rep.ok(), "{rep:?}");
    }
}
