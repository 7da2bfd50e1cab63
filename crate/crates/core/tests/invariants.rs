use gordian::conway::{SkeinEngine, SkeinLimits};
use gordian::{
    a2, conway_class, conway_polynomial, conway_via_matrix, parse_braid, parse_pd, twist_knot, BraidWord,
    ConwayPolynomial, LinkDiagram, MoveSite, Sign,
};
use num_bigint::BigInt;
use proptest::prelude::*;

const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
const FIGURE_EIGHT: &str = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";

fn poly(c: &[i64]) -> ConwayPolynomial {
    ConwayPolynomial::from_coeffs(c.iter().copied())
}

fn word(n: u32, letters: &[i32]) -> BraidWord {
    BraidWord::new(n, letters.to_vec()).unwrap()
}

fn cycles(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut count = 0;
    for s in 0..perm.len() {
        if !seen[s] {
            count += 1;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
            }
        }
    }
    count
}

fn all_words(n: u32, max_len: usize) -> Vec<BraidWord> {
    let gens: Vec<i32> = (1..n as i32).flat_map(|g| [g, -g]).collect();
    let mut out = vec![word(n, &[])];
    let mut frontier = vec![Vec::<i32>::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &g in &gens {
                let mut v = w.clone();
                v.push(g);
                out.push(word(n, &v));
                next.push(v);
            }
        }
        frontier = next;
    }
    out
}

#[test]
fn closure_components_match_permutation_cycles() {
    for (n, max_len) in [(2, 10), (3, 8), (4, 6), (5, 5)] {
        for w in all_words(n, max_len) {
            let d = w.closure();
            let expected = cycles(&w.permutation());
            assert_eq!(w.closure_components(), expected, "{w}");
            assert_eq!(d.component_count(), expected, "{w}");
            assert_eq!(d.crossing_count(), w.len());
        }
    }
}

#[test]
fn knot_link_parity() {
    for w in all_words(3, 6) {
        let p = conway_polynomial(&w.closure()).unwrap();
        let odd_components = w.closure_components() % 2 == 1;
        assert!(if odd_components { p.is_even() } else { p.is_odd() }, "{w}: {p}");
    }
}

#[test]
fn golden_values() {
    assert_eq!(conway_polynomial(&parse_pd("").unwrap()).unwrap(), poly(&[1]));
    assert_eq!(conway_polynomial(&parse_pd(TREFOIL).unwrap()).unwrap(), poly(&[1, 0, 1]));
    assert_eq!(conway_polynomial(&parse_pd(FIGURE_EIGHT).unwrap()).unwrap(), poly(&[1, 0, -1]));
    assert_eq!(conway_polynomial(&parse_braid("1 1 1").unwrap().closure()).unwrap(), poly(&[1, 0, 1]));
    assert_eq!(conway_polynomial(&parse_braid("1 -2 1 -2").unwrap().closure()).unwrap(), poly(&[1, 0, -1]));
    // Hopf link, positive and negative
    assert_eq!(conway_polynomial(&parse_braid("1 1").unwrap().closure()).unwrap(), poly(&[0, 1]));
    assert_eq!(conway_polynomial(&parse_braid("-1 -1").unwrap().closure()).unwrap(), poly(&[0, -1]));
    // two-component unlink
    assert!(conway_polynomial(&parse_braid("B2:").unwrap().closure()).unwrap().is_zero());
    // (2,5) torus knot: 1 + 3z^2 + z^4
    assert_eq!(conway_polynomial(&parse_braid("1 1 1 1 1").unwrap().closure()).unwrap(), poly(&[1, 0, 3, 0, 1]));
}

#[test]
fn twist_knots_by_both_oracles() {
    let mut engine = SkeinEngine::new(SkeinLimits { max_crossings: 64, ..SkeinLimits::default() });
    for m in -10..=10 {
        let w = twist_knot(m);
        assert!(w.closes_to_knot());
        let want = poly(&[1, 0, m.into()]);
        assert_eq!(engine.conway(&w.closure()).unwrap(), want, "skein, m = {m}");
        assert_eq!(conway_via_matrix(&w).unwrap(), want, "matrix, m = {m}");
    }
}

#[test]
fn multiplicative_under_connected_sum() {
    let pieces: Vec<LinkDiagram> = vec![
        LinkDiagram::unknot(),
        parse_pd(TREFOIL).unwrap(),
        parse_pd(FIGURE_EIGHT).unwrap(),
        twist_knot(2).closure(),
        twist_knot(-2).closure(),
    ];
    for a in &pieces {
        for b in &pieces {
            let sum = a.connected_sum(b).unwrap();
            assert!(sum.is_knot());
            assert_eq!(sum.crossing_count(), a.crossing_count() + b.crossing_count());
            let lhs = conway_polynomial(&sum).unwrap();
            let rhs = &conway_polynomial(a).unwrap() * &conway_polynomial(b).unwrap();
            assert_eq!(lhs, rhs, "{} # {}", a.to_pd_string(), b.to_pd_string());
        }
    }
}

#[test]
fn mirror_trefoil_has_the_same_polynomial() {
    let left = parse_braid("-1 -1 -1").unwrap().closure();
    assert_eq!(left.writhe(), -3);
    assert_eq!(conway_polynomial(&left).unwrap(), poly(&[1, 0, 1]));
    let t = parse_pd(TREFOIL).unwrap();
    let mut mirrored = t.clone();
    for i in 0..3 {
        mirrored = mirrored.crossing_change(i).unwrap();
    }
    assert_eq!(mirrored.writhe(), -t.writhe());
    assert_eq!(conway_polynomial(&mirrored).unwrap(), poly(&[1, 0, 1]));
}

fn skein_relation_holds(d: &LinkDiagram) {
    for i in 0..d.crossing_count() {
        let other = d.crossing_change(i).unwrap();
        let (plus, minus) = match d.signs()[i] {
            Sign::Positive => (d, &other),
            Sign::Negative => (&other, d),
        };
        let zero = d.smoothing(i).unwrap();
        let lhs = &conway_polynomial(plus).unwrap() - &conway_polynomial(minus).unwrap();
        let rhs = conway_polynomial(&zero).unwrap().shift(1);
        assert_eq!(lhs, rhs, "crossing {i} of {}", d.to_pd_string());
    }
}

#[test]
fn skein_relation_at_every_crossing() {
    for d in [parse_pd(TREFOIL).unwrap(), parse_pd(FIGURE_EIGHT).unwrap()] {
        skein_relation_holds(&d);
    }
    for text in ["1 1", "1 -2 1 -2 2", "1 2 -1 2 -3 2 3", "1 1 1 1 1", "2 -1 2 1 -3 -3 2"] {
        skein_relation_holds(&parse_braid(text).unwrap().closure());
    }
    for m in [-3, 3, 4] {
        skein_relation_holds(&twist_knot(m).closure());
    }
}

#[test]
fn crossing_change_is_an_involution() {
    let t = parse_pd(TREFOIL).unwrap();
    for i in 0..3 {
        let once = t.crossing_change(i).unwrap();
        assert_ne!(once.signs()[i], t.signs()[i]);
        assert_eq!(once.crossing_change(i).unwrap(), t);
    }
}

#[test]
fn class_requires_a_knot() {
    let hopf = parse_braid("1 1").unwrap().closure();
    assert!(conway_class(&hopf).is_err());
    assert_eq!(conway_class(&parse_pd(TREFOIL).unwrap()).unwrap().a2(), BigInt::from(1));
}

fn knot_word() -> impl Strategy<Value = BraidWord> {
    (3u32..=5, prop::collection::vec((1i32..=4, any::<bool>()), 0..=12)).prop_filter_map("closes to a knot", |(n, raw)| {
        let letters = raw.into_iter().map(|(g, pos)| {
            let g = (g - 1) % (n as i32 - 1) + 1;
            if pos {
                g
            } else {
                -g
            }
        });
        let w = BraidWord::new(n, letters.collect()).ok()?;
        w.closes_to_knot().then_some(w)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn oracles_agree(w in knot_word()) {
        prop_assert_eq!(conway_polynomial(&w.closure()).unwrap(), conway_via_matrix(&w).unwrap());
    }

    #[test]
    fn mirror_word_negates_odd_part(n in 2u32..=4, raw in prop::collection::vec((1i32..=3, any::<bool>()), 0..=9)) {
        let letters: Vec<i32> = raw.iter().map(|&(g, s)| { let g = (g - 1) % (n as i32 - 1) + 1; if s { g } else { -g } }).collect();
        let w = BraidWord::new(n, letters.clone()).unwrap();
        let m = BraidWord::new(n, letters.iter().map(|l| -l).collect()).unwrap();
        let p = conway_polynomial(&w.closure()).unwrap();
        let q = conway_polynomial(&m.closure()).unwrap();
        let flipped = ConwayPolynomial::from_coeffs(
            (0..=p.degree().unwrap_or(0)).map(|k| if k % 2 == 1 { -p.coeff(k) } else { p.coeff(k) }),
        );
        prop_assert_eq!(q, flipped);
    }

    #[test]
    fn delta_move_changes_a2_by_one(w in knot_word(), pick in any::<prop::sample::Index>()) {
        let sites: Vec<MoveSite> = w.delta_sites().collect();
        let site = sites[pick.index(sites.len())];
        let moved = w.apply_delta_move(&site).unwrap();
        let before = a2(&conway_via_matrix(&w).unwrap()).unwrap();
        let after = a2(&conway_via_matrix(&moved).unwrap()).unwrap();
        prop_assert_eq!((after - before).magnitude().clone(), 1u8.into());
    }

    #[test]
    fn opposite_delta_moves_cancel(w in knot_word(), pick in any::<prop::sample::Index>()) {
        let sites: Vec<MoveSite> = w.delta_sites().collect();
        let site = sites[pick.index(sites.len())];
        let moved = w.apply_delta_move(&site).unwrap();
        let back = moved.apply_delta_move(&MoveSite { sign: site.sign.flip(), ..site }).unwrap();
        prop_assert_eq!(back.len(), w.len() + 12);
        prop_assert_eq!(conway_via_matrix(&back).unwrap(), conway_via_matrix(&w).unwrap());
    }

    #[test]
    fn pd_text_round_trips(w in knot_word()) {
        let d = w.closure();
        let text = d.to_pd_string();
        let again = parse_pd(&text).unwrap();
        prop_assert_eq!(again.signs(), d.signs());
        prop_assert_eq!(again.component_count(), d.component_count());
    }
}
