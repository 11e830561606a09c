use std::collections::BTreeMap;

use khi::acceptance::{reidemeister_pairs, APPENDIX};
use khi::cli::{module_from_json, module_to_json, parse_table, render_table, Format};
use khi::coeffs::RingSpec;
use khi::complex::{build_ckh, build_involutive, build_variant, ChainComplexGraded, ConeMode, Variant, DEFAULT_CROSSING_CAP as CAP};
use khi::diagram::{build_named, CombineKind, InvolutiveDiagram};
use khi::homology::{check_cycle, homology_graded, GradedModule};
use khi::invariants::{equivariant_lee_cycles, equivariant_s, equivariant_s_with_flips};
use proptest::prelude::*;

fn knot(idx: usize) -> (&'static str, InvolutiveDiagram) {
    let name = APPENDIX[idx % APPENDIX.len()];
    (name, build_named(name).unwrap())
}

/// `Σ_i (−1)^i dim C^{i,j}` per `j`.
fn euler(c: &ChainComplexGraded) -> BTreeMap<i32, i64> {
    let mut out = BTreeMap::new();
    for g in &c.gens {
        *out.entry(g.j).or_insert(0) += if g.i.rem_euclid(2) == 0 { 1 } else { -1 };
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Rank of a 0/1 matrix given by sparse columns, by plain elimination.
fn f2_rank(cols: &[Vec<u32>]) -> usize {
    let mut pivots: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    let mut rank = 0;
    for col in cols {
        let mut v = col.clone();
        while let Some(&top) = v.last() {
            match pivots.get(&top) {
                Some(p) => v = khi::sparse::xor_sorted(&v, p),
                None => {
                    pivots.insert(top, v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

#[test]
fn euler_characteristic_is_diagram_independent() {
    let mut pairs: Vec<(InvolutiveDiagram, InvolutiveDiagram)> = ["5_2", "6_1", "6_2", "7_2", "7_3", "7_5", "7_6"]
        .iter()
        .map(|n| (build_named(&format!("{n}a")).unwrap(), build_named(&format!("{n}b")).unwrap()))
        .collect();
    pairs.extend(reidemeister_pairs().into_iter().map(|(_, p)| p.unwrap()));
    for (a, b) in pairs {
        let ca = build_ckh(&a, RingSpec::F2H0, CAP).unwrap();
        let cb = build_ckh(&b, RingSpec::F2H0, CAP).unwrap();
        assert_eq!(euler(&ca), euler(&cb));
    }
}

#[test]
fn equivariant_lee_cycles_are_cycles() {
    for &name in APPENDIX {
        let d = build_named(name).unwrap();
        let (c, lo, hi) = equivariant_lee_cycles(&d, RingSpec::F2HH, ConeMode::Tau, CAP).unwrap();
        assert_eq!(check_cycle(&c, &lo), Ok(()), "{name}");
        assert_eq!(check_cycle(&c, &hi), Ok(()), "{name}");
        let tau = c.tau.as_ref().unwrap();
        assert_eq!(tau.apply(&lo.support), lo.support, "{name}");
    }
}

#[test]
fn classic_divisibility_between_equivariant_ones() {
    for &name in APPENDIX.iter().chain(&["m9_46"]) {
        for d in [build_named(name).unwrap(), build_named(name).unwrap().mirror()] {
            let r = equivariant_s(&d, CAP).unwrap();
            assert!(r.d_lower <= r.d_classic && r.d_classic <= r.d_upper, "{name}: {r:?}");
        }
    }
}

#[test]
fn disjoint_union_against_connected_sum() {
    for (a, b) in [("3_1", "4_1"), ("3_1", "3_1"), ("m9_46", "unknot"), ("4_1", "5_2a")] {
        let (da, db) = (build_named(a).unwrap(), build_named(b).unwrap());
        let sum = da.combine(&db, CombineKind::ConnectedSumOnAxis).unwrap();
        let split = da.combine(&db, CombineKind::DisjointUnion).unwrap();
        let s_sum = equivariant_s(&sum, CAP).unwrap().s_lower;
        let flips = vec![false; split.components().len().max(2)];
        let s_split = equivariant_s_with_flips(&split, &flips, CAP).unwrap().s_lower;
        assert!(s_sum - 1 <= s_split && s_split <= s_sum + 1, "{a} ⊔ {b}: {s_split} vs {s_sum}");
    }
}

fn module() -> impl Strategy<Value = GradedModule> {
    let free = proptest::collection::vec((-6i32..8, -10i32..10), 0..6);
    let tors = proptest::collection::vec((-6i32..8, -10i32..10, 1u32..4), 0..8);
    (free, tors).prop_map(|(f, t)| {
        GradedModule {
            free: f.into_iter().map(|(i, j)| (i, 2 * j)).collect(),
            torsion: t.into_iter().map(|(i, j, k)| (i, 2 * j, k)).collect(),
        }
        .normalized()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn rank_nullity_against_homology(idx in 0usize..64, involutive in any::<bool>()) {
        // over (𝔽₂, 1) the homology has dimension n − 2·rank d
        let (_, d) = knot(idx);
        let c = if involutive {
            build_involutive(&d, RingSpec::F2H1, ConeMode::Tau, Variant::Unreduced, CAP).unwrap()
        } else {
            build_variant(&d, RingSpec::F2H1, Variant::Unreduced, CAP).unwrap()
        };
        let m = homology_graded(&c);
        let rank = f2_rank(&c.d.cols);
        prop_assert_eq!(m.free.len() + m.torsion.len(), c.len() - 2 * rank);
        // per degree: #gens(i) = rank d_i + dim ker d_i
        let mut by_i: BTreeMap<i32, Vec<Vec<u32>>> = BTreeMap::new();
        for (g, gen) in c.gens.iter().enumerate() {
            by_i.entry(gen.i).or_default().push(c.d.cols[g].clone());
        }
        let mut total_ker = 0;
        for cols in by_i.values() {
            total_ker += cols.len() - f2_rank(cols);
        }
        prop_assert_eq!(total_ker, c.len() - rank);
    }

    #[test]
    fn text_and_json_encode_the_same_module(m in module()) {
        prop_assert_eq!(parse_table(&render_table(&m, Format::Text)).unwrap(), m.clone());
        prop_assert_eq!(module_from_json(&module_to_json(&m, None)).unwrap(), m);
    }
}

#[test]
fn corpus_is_deterministic_across_thread_counts() {
    let pick = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            use rayon::prelude::*;
            [1usize, 4, 4, 9, 9, 11].par_iter().map(|&k| khi::acceptance::CRITERIA[k]()).map(|r| (r.id, r.pass, r.detail)).collect::<Vec<_>>()
        })
    };
    assert_eq!(pick(1), pick(3));
}
