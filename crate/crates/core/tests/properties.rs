use proptest::prelude::*;

use cabelt::action::GeneratorTable;
use cabelt::belt::embed_automorphism;
use cabelt::khat::{good_positions, khat_table, split_tracks};
use cabelt::neumann::{effective_segments, neumann_even_generators, neumann_progression_generators};
use cabelt::text::{format_periodic, parse_periodic};
use cabelt::wreath::assemble_example_zz2z;
use cabelt::{gallery, Alphabet, PeriodicConfig, Symbol};

fn tables() -> Vec<(&'static str, GeneratorTable)> {
    let afo = gallery::example_afo().unwrap();
    let swap = embed_automorphism(&gallery::conditional_swap().unwrap(), false).unwrap();
    vec![
        ("khat2", khat_table(2).unwrap()),
        ("khat3", khat_table(3).unwrap()),
        ("neumann", neumann_even_generators().unwrap()),
        ("prog32", neumann_progression_generators(3, 2).unwrap()),
        ("afo", GeneratorTable::new(afo.alphabet()).with(afo.generator("f")).unwrap()),
        ("belt_swap", GeneratorTable::new(swap.alphabet()).with(swap.generator("f")).unwrap()),
        ("zz2z", assemble_example_zz2z().unwrap()),
    ]
}

fn tape(alphabet: &Alphabet, raw: &[u32]) -> Vec<Symbol> {
    raw.iter().map(|&r| r % alphabet.size() as Symbol).collect()
}

fn rotate(cells: &[Symbol], k: usize) -> Vec<Symbol> {
    let n = cells.len();
    (0..n).map(|i| cells[(i + k) % n]).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generators_commute_with_rotation(raw in prop::collection::vec(any::<u32>(), 1..20), k in 0usize..20) {
        for (name, t) in tables() {
            let x = tape(t.alphabet(), &raw);
            let r = k % x.len();
            for g in t.generators() {
                for e in [1, -1] {
                    prop_assert_eq!(g.apply_pow(&rotate(&x, r), e), rotate(&g.apply_pow(&x, e), r), "{} {}^{}", name, t.names()[0], e);
                }
            }
        }
    }

    #[test]
    fn stated_inverses_undo_generators(raw in prop::collection::vec(any::<u32>(), 1..20)) {
        for (name, t) in tables() {
            let x = tape(t.alphabet(), &raw);
            for g in t.generators() {
                prop_assert_eq!(g.apply_pow(&g.apply_pow(&x, 1), -1), x.clone(), "{}", name);
                prop_assert_eq!(g.apply_pow(&g.apply_pow(&x, -1), 1), x.clone(), "{}", name);
            }
        }
    }

    #[test]
    fn khat_generators_keep_runs(raw in prop::collection::vec(any::<u32>(), 1..20), k in 1usize..4) {
        let t = khat_table(k).unwrap();
        let x = tape(t.alphabet(), &raw);
        let before = good_positions(&split_tracks(t.alphabet(), k, &x));
        for g in t.generators() {
            let y = g.apply_pow(&x, 1);
            prop_assert_eq!(&good_positions(&split_tracks(t.alphabet(), k, &y)), &before);
        }
    }

    #[test]
    fn word_then_inverse_word_is_identity(raw in prop::collection::vec(any::<u32>(), 1..16), letters in prop::collection::vec((0usize..2, -2i64..=2), 0..6)) {
        let t = khat_table(2).unwrap();
        let x = tape(t.alphabet(), &raw);
        let names = t.names();
        let text: Vec<String> = letters.iter().filter(|(_, e)| *e != 0).map(|(i, e)| format!("{}^{}", names[*i], e)).collect();
        let w = t.parse_word(&text.join(" ")).unwrap();
        let y = t.apply_cells(&w, &x).unwrap();
        prop_assert_eq!(t.apply_cells(&w.inverse(), &y).unwrap(), x);
    }

    #[test]
    fn text_form_round_trips(raw in prop::collection::vec(any::<u32>(), 1..30), size in 2usize..70) {
        let a = Alphabet::numeric(size).unwrap();
        let x = PeriodicConfig::new(&a, tape(&a, &raw)).unwrap();
        prop_assert_eq!(parse_periodic(&a, &format_periodic(&x)).unwrap(), x);
    }
}

/// Every effective segment lies inside a head-track run, reads the marks
/// `1 2 … k 1 …` from a `1`, has length `start + j·step`, and segments are
/// disjoint; checked on 200 random tapes of period at most 20.
#[test]
fn effective_segments_are_well_formed() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let mut seen = 0;
    for case in 0..200 {
        let (start, step) = [(3, 2), (4, 3), (3, 1), (5, 2)][case % 4];
        let n = rng.gen_range(1..=20);
        // bias towards long runs so segments actually appear
        let heads: Vec<Symbol> = (0..n).map(|_| [0, 1, 1, 1, 2, 3][rng.gen_range(0..6)]).collect();
        let marks: Vec<Symbol> = (0..n).map(|i| if rng.gen_bool(0.8) { (i % step) as Symbol } else { rng.gen_range(0..step) as Symbol }).collect();
        let good = good_positions(&[heads.clone()]);
        let mut used = vec![false; n];
        for (s, l) in effective_segments(start, step, &heads, &marks) {
            assert!(l >= start && (l - start) % step == 0, "case {case}: length {l}");
            assert!(l <= n);
            for j in 0..l {
                let c = (s + j) % n;
                assert!(good[c], "case {case}: cell {c} outside the runs");
                assert_eq!(marks[c] as usize, j % step, "case {case}: mark at {c}");
                assert!(!used[c], "case {case}: overlap at {c}");
                used[c] = true;
            }
            seen += 1;
        }
    }
    assert!(seen > 20, "only {seen} segments");
}
