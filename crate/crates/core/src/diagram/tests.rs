use super::*;

const UNKNOT_SIK: &str = "mode strong\nsucc 1 1\ntau 1\nbase 1\n";

/// Right-handed trefoil: standard PD code with the strong inversion that
/// fixes edges 3 and 6.
fn pd_trefoil() -> InvolutiveDiagram {
    InvolutiveDiagram::from_pd(&[[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]], &[(1, 5), (2, 4)], Some(3), Mode::StrongInversion)
        .unwrap()
}

fn kink(positive: bool) -> InvolutiveDiagram {
    let spec = if positive { "0-1 | 0+ | 0-1" } else { "0-1 | 0- | 0-1" };
    let d = Plat::parse(2, spec, Axis::Horizontal, Mode::StrongInversion).unwrap().build().unwrap();
    if (d.writhe() > 0) == positive {
        d
    } else {
        d.mirror()
    }
}

/// Independent circle counter: walks the resolved diagram by following
/// edge ends through the smoothing pairs.
fn circles_by_walking(d: &InvolutiveDiagram, s: &State) -> usize {
    // end (e, 0) = tail, (e, 1) = head; a smoothing glues ends
    let n = d.n_edges();
    let mut glue: HashMap<(usize, u8), (usize, u8)> = HashMap::new();
    for (ci, c) in d.crossings().iter().enumerate() {
        for (a, b) in c.smoothing_pairs(s.get(ci)) {
            let end = |e: usize| if c.under_in == e || c.over_in == e { (e, 1u8) } else { (e, 0u8) };
            let (ea, eb) = if a == b { ((a, 1), (a, 0)) } else { (end(a), end(b)) };
            glue.insert(ea, eb);
            glue.insert(eb, ea);
        }
    }
    let mut seen = vec![false; n];
    let mut count = 0;
    for s0 in 0..n {
        if seen[s0] {
            continue;
        }
        count += 1;
        let mut cur = (s0, 1u8);
        loop {
            seen[cur.0] = true;
            let Some(&nxt) = glue.get(&cur) else { break };
            cur = (nxt.0, 1 - nxt.1);
            if cur.0 == s0 {
                break;
            }
        }
    }
    count
}

#[test]
fn unknot_file() {
    let d = parse_diagram(UNKNOT_SIK).unwrap();
    assert_eq!(d.n_crossings(), 0);
    let s = d.seifert_resolution();
    assert_eq!((s.r, s.w), (1, 0));
    assert!(d.validate().is_empty());
    assert_eq!(d.resolve_state(&State::new(0, 0)).circle_count, 1);
    let (s2, bij) = d.tau_action(&State::new(0, 0));
    assert_eq!((s2.bits, bij), (0, vec![0]));
}

#[test]
fn pd_trefoil_matches_plat_trefoil() {
    let d = pd_trefoil();
    assert_eq!(d.writhe(), 3);
    assert_eq!(d.seifert_resolution().r, 2);
    assert_eq!(d.on_axis_crossings().len(), 1);
    let t = build_named("torus2(3)+").unwrap();
    assert_eq!((t.n_crossings(), t.n_edges(), t.writhe()), (3, 6, 3));
    assert_eq!(t.seifert_resolution().r, 2);
    assert_eq!(t.on_axis_crossings().len(), 1);
    assert_eq!(t.fixed_edges().len(), 2);
    assert_eq!(build_named("torus2(3)-").unwrap().writhe(), -3);
}

#[test]
fn sign_swap_rejected() {
    let text = to_sik(&pd_trefoil());
    let bad: String = text
        .lines()
        .map(|l| if l.starts_with("x c2 +") { l.replacen('+', "-", 1) } else { l.to_string() })
        .collect::<Vec<_>>()
        .join("\n");
    let err = parse_diagram(&bad).unwrap_err().to_string();
    assert!(err.contains("involution must preserve crossing sign"), "{err}");
}

#[test]
fn periodic_fixed_edge_rejected() {
    let err = parse_diagram("mode periodic\nsucc 1 1\ntau 1\n").unwrap_err().to_string();
    assert!(err.contains("fixed edges forbidden in periodic mode"), "{err}");
}

#[test]
fn syntax_errors_carry_line_numbers() {
    let err = parse_diagram("mode strong\n\nx c1 * u:1,2 o:3,4\n").unwrap_err();
    assert!(matches!(err, DiagramError::Syntax { line: 3, .. }), "{err}");
    let err = parse_diagram("mode sideways\n").unwrap_err();
    assert!(matches!(err, DiagramError::Syntax { line: 1, .. }));
    let err = parse_diagram("succ 1 1\ntau 1\nbase 1\nbase 1\n").unwrap_err();
    assert!(matches!(err, DiagramError::Syntax { line: 4, .. }));
}

#[test]
fn basepoint_must_be_fixed() {
    let text = to_sik(&pd_trefoil()).replace("base 3", "base 1");
    let err = parse_diagram(&text).unwrap_err().to_string();
    assert!(err.contains("basepoint 1 must be a fixed edge"), "{err}");
}

#[test]
fn sik_round_trip() {
    for d in [pd_trefoil(), build_named("torus2(5)-").unwrap(), parse_diagram(UNKNOT_SIK).unwrap()] {
        let text = to_sik(&d);
        let back = parse_diagram(&text).unwrap();
        assert_eq!(to_sik(&back), text);
    }
}

#[test]
fn trefoil_all_zero_state_has_two_circles() {
    let d = pd_trefoil();
    let s = State::new(0, 3);
    assert_eq!(d.resolve_state(&s).circle_count, 2);
    assert_eq!(circles_by_walking(&d, &s), 2);
}

#[test]
fn kinks() {
    for pos in [true, false] {
        let d = kink(pos);
        assert_eq!(d.n_crossings(), 1);
        assert_eq!(d.writhe(), if pos { 1 } else { -1 });
        let s = State::new(1, 1);
        let expect = if pos { 1 } else { 2 };
        assert_eq!(d.resolve_state(&s).circle_count, expect);
        assert_eq!(circles_by_walking(&d, &s), expect);
        assert_eq!(d.seifert_resolution().r, 2);
    }
}

#[test]
fn circle_counts_match_walker_on_corpus() {
    for name in corpus_names().into_iter().chain(["torus2(3)+", "torus2(5)-"]) {
        let d = build_named(name).unwrap();
        let n = d.n_crossings();
        for bits in (0..1u64 << n).step_by(1 + (1usize << n) / 64) {
            let s = State::new(bits, n);
            assert_eq!(d.resolve_state(&s).circle_count, circles_by_walking(&d, &s), "{name} {bits:b}");
        }
    }
}

#[test]
fn figure_eight_off_axis_pair() {
    let d = build_named("4_1").unwrap();
    let iota = d.crossing_involution();
    let (a, (b, _)) = iota.iter().enumerate().find(|(c, (t, _))| c != t).map(|(c, t)| (c, *t)).unwrap();
    let s = State::new(1 << b, d.n_crossings());
    let (s2, _) = d.tau_action(&s);
    assert!(s2.get(a) && !s2.get(b));
}

#[test]
fn corpus_structural_invariants() {
    for name in corpus_names().into_iter().chain(["unknot", "torus2(3)+", "torus2(7)-"]) {
        let d = build_named(name).unwrap();
        assert!(d.validate().is_empty(), "{name}");
        let sd = d.seifert_resolution();
        assert!(sd.is_bipartite(), "{name}");
        assert_eq!(sd.w, sd.n_plus as i64 - sd.n_minus as i64);
        let m = d.mirror();
        assert!(m.validate().is_empty());
        assert_eq!(m.writhe(), -d.writhe());
        assert_eq!(m.seifert_resolution().r, sd.r, "{name}");
        assert_eq!(m.mirror(), d);
        let iota = d.crossing_involution();
        let n = d.n_crossings();
        for bits in (0..1u64 << n).step_by(1 + (1usize << n) / 32) {
            let s = State::new(bits, n);
            let (s2, bij) = d.tau_action(&s);
            assert_eq!(d.resolve_state(&s).circle_count, d.resolve_state(&s2).circle_count);
            let (s3, bij2) = d.tau_action(&s2);
            assert_eq!(s3, s);
            assert!(bij.iter().enumerate().all(|(c, &c2)| bij2[c2] == c));
        }
        // on-axis edges meet only fixed crossings or join swapped ones
        for e in d.fixed_edges() {
            for (ci, c) in d.crossings().iter().enumerate() {
                if Slot::ALL.iter().any(|&s| c.edge(s) == e) {
                    let t = iota[ci].0;
                    assert!(t == ci || Slot::ALL.iter().any(|&s| d.crossings()[t].edge(s) == e));
                }
            }
        }
    }
}

#[test]
fn on_axis_trefoil_tau_is_identity_on_on_axis_states() {
    let d = build_named("torus2(3)+").unwrap();
    let on = d.on_axis_crossings();
    for &c in &on {
        let s = State::new(1 << c, 3);
        let (s2, _) = d.tau_action(&s);
        assert_eq!(s2, s);
    }
}

#[test]
fn combine_examples() {
    let u = build_named("unknot").unwrap();
    let uu = u.combine(&u, CombineKind::DisjointUnion).unwrap();
    assert_eq!(uu.components().len(), 2);
    assert_eq!(uu.seifert_resolution().r, 2);
    let t = build_named("3_1").unwrap();
    let tt = t.combine(&t, CombineKind::ConnectedSumOnAxis).unwrap();
    assert_eq!(tt.n_crossings(), 6);
    assert_eq!(tt.writhe(), 2 * t.writhe());
    assert_eq!(tt.components().len(), 1);
    assert!(tt.basepoint().is_some());
    assert_eq!(t.combine(&u, CombineKind::ConnectedSumOnAxis).unwrap(), t);
    let nob = t.with_basepoint(None).unwrap();
    assert_eq!(nob.combine(&t, CombineKind::ConnectedSumOnAxis), Err(DiagramError::MissingAttachment));
}

#[test]
fn unknown_name() {
    assert!(matches!(build_named("8_19"), Err(DiagramError::UnknownName(_))));
}

#[test]
fn m9_46_data() {
    let d = build_named("m9_46").unwrap();
    let s = d.seifert_resolution();
    assert_eq!((s.w, s.r), (3, 8));
}

mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn tau_action_is_involutive(idx in 0usize..24, bits in any::<u64>()) {
            let names = corpus_names();
            let d = build_named(names[idx % names.len()]).unwrap();
            let n = d.n_crossings();
            let s = State::new(bits & ((1u64 << n) - 1), n);
            let (s2, bij) = d.tau_action(&s);
            let (s3, bij2) = d.tau_action(&s2);
            prop_assert_eq!(s3, s);
            for (c, &c2) in bij.iter().enumerate() {
                prop_assert_eq!(bij2[c2], c);
            }
            prop_assert_eq!(d.resolve_state(&s).circle_count, d.resolve_state(&s2).circle_count);
        }
    }
}
