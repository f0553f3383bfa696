//! Named constructions shared by the CLI, the acceptance suite and the tests.

use crate::action::Generator;
use crate::afo::{AfoSpec, MixedFactor, SafeWordSet};
use crate::alphabet::Alphabet;
use crate::code::{Automorphism, SlidingBlockCode};
use crate::error::Result;

/// `{0, 1, 2}` with zero `0`.
pub fn ternary() -> Alphabet {
    Alphabet::numeric(3).expect("three symbols")
}

/// The worked AFO on `{0,1,2}`: `1 ↦ 2` moving one cell right, `2 ↦ 1` moving one cell left.
pub fn example_afo() -> Result<AfoSpec> {
    let safe = SafeWordSet::new(&ternary(), vec![vec![1], vec![2]], 1)?;
    AfoSpec::new(safe, vec![1, 0], vec![1, -1])
}

/// Swaps `1 ↔ 2` at cell `i` when cell `i-1` is nonzero. An involution of radius 1.
pub fn conditional_swap() -> Result<Automorphism> {
    let a = ternary();
    let rule = SlidingBlockCode::from_fn(&a, -1, 0, |w| match (w[0], w[1]) {
        (0, x) => x,
        (_, 0) => 0,
        (_, x) => 3 - x,
    });
    Automorphism::new("swap", rule.clone(), rule)
}

/// The three maps the belt compiler is checked on.
pub fn belt_test_maps() -> Result<Vec<Automorphism>> {
    let a = ternary();
    Ok(vec![Automorphism::identity(&a), Automorphism::shift(&a), conditional_swap()?])
}

/// AFOs whose sparsity bound is checked.
pub fn shipped_afos() -> Result<Vec<(String, AfoSpec)>> {
    let a = ternary();
    let mut out = vec![("example".to_string(), example_afo()?)];
    let s = SafeWordSet::new(&a, vec![vec![1, 0, 1]], 5)?;
    out.push(("101".into(), AfoSpec::new(s, vec![0], vec![1])?));
    let s = SafeWordSet::with_minimal_threshold(&a, vec![vec![1, 2], vec![2, 1], vec![1, 1]])?;
    out.push(("three_words".into(), AfoSpec::new(s, vec![1, 2, 0], vec![0, 2, -1])?));
    out.push(("example_doubled".into(), example_afo()?.doubled()?));
    Ok(out)
}

/// `σ · f · swap` for the example AFO `f`, rightmost factor first.
pub fn mixed_product() -> Result<Vec<MixedFactor>> {
    let a = ternary();
    Ok(vec![
        MixedFactor::Auto(Generator::from(&Automorphism::shift(&a))),
        MixedFactor::Afo(example_afo()?),
        MixedFactor::Auto(Generator::from(&conditional_swap()?)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::TapeMap;

    #[test]
    fn swap_is_a_nontrivial_involution() {
        let s = conditional_swap().unwrap();
        assert_eq!(s.forward.apply_cells(&[0, 1, 1, 2]), vec![0, 1, 2, 1]);
        for x in crate::config::PeriodicConfig::all(&ternary(), 5) {
            let c = x.cells();
            assert_eq!(s.forward.apply_cells(&s.forward.apply_cells(c)), c);
        }
    }

    #[test]
    fn shipped_afos_are_valid() {
        for (name, f) in shipped_afos().unwrap() {
            for n in 1..=6 {
                assert!(f.moved_count(n) <= f.word_count() * n, "{name} at {n}");
            }
        }
    }
}
