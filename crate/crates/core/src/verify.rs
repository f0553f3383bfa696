//! Exhaustive and sampled checks of maps on periodic tapes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::action::TapeMap;
use crate::alphabet::{Alphabet, Symbol};
use crate::code::{Automorphism, IdentityCheck, SlidingBlockCode};
use crate::config::PeriodicConfig;
use crate::report::{Record, Report};

pub const DEFAULT_SEED: u64 = 0x5eed_cafe;

#[derive(Debug, Clone)]
pub struct VerifyParams {
    /// Exhaustive checks cover every period `1..=max_period`...
    pub max_period: usize,
    /// ...but skip periods with more tapes than this.
    pub tape_budget: u64,
    pub random_count: usize,
    pub random_max_period: usize,
    pub seed: u64,
    pub window_budget: u128,
}

impl Default for VerifyParams {
    fn default() -> Self {
        Self {
            max_period: 8,
            tape_budget: 2_000_000,
            random_count: 1000,
            random_max_period: 64,
            seed: DEFAULT_SEED,
            window_budget: crate::code::DEFAULT_WINDOW_BUDGET,
        }
    }
}

/// Periods `1..=max` whose full enumeration fits in `budget`.
pub fn enumerable_periods(alphabet: &Alphabet, max: usize, budget: u64) -> Vec<usize> {
    (1..=max)
        .filter(|&n| PeriodicConfig::count(alphabet, n).is_some_and(|c| c <= budget))
        .collect()
}

/// Runs `f` on every tape of every listed period; stops at the first `Some`.
pub fn find_tape<T>(
    alphabet: &Alphabet,
    periods: &[usize],
    mut f: impl FnMut(&[Symbol]) -> Option<T>,
) -> Option<T> {
    let q = alphabet.size() as Symbol;
    for &n in periods {
        let mut cells = vec![0 as Symbol; n];
        'tapes: loop {
            if let Some(t) = f(&cells) {
                return Some(t);
            }
            // odometer increment, last cell fastest
            for i in (0..n).rev() {
                cells[i] += 1;
                if cells[i] < q {
                    continue 'tapes;
                }
                cells[i] = 0;
            }
            break;
        }
    }
    None
}

/// Random tapes with periods in `1..=max_period`, reproducible from `seed`.
pub fn random_tapes(alphabet: &Alphabet, count: usize, max_period: usize, seed: u64) -> Vec<Vec<Symbol>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_period);
            PeriodicConfig::random(alphabet, n, &mut rng).into_cells()
        })
        .collect()
}

pub fn show(alphabet: &Alphabet, cells: &[Symbol]) -> String {
    format!("{:?}", PeriodicConfig::from_raw(alphabet, cells.to_vec()))
}

fn rotate(cells: &[Symbol], k: usize) -> Vec<Symbol> {
    let n = cells.len();
    (0..n).map(|i| cells[(i + k) % n]).collect()
}

/// First tape (exhaustive, then random) violating `pred`.
pub fn counterexample(
    alphabet: &Alphabet,
    params: &VerifyParams,
    mut pred: impl FnMut(&[Symbol]) -> bool,
) -> (Option<Vec<Symbol>>, String) {
    let periods = enumerable_periods(alphabet, params.max_period, params.tape_budget);
    let found = find_tape(alphabet, &periods, |c| (!pred(c)).then(|| c.to_vec()));
    let scope = format!(
        "exhaustive_periods={:?} random={}x<= {}",
        periods, params.random_count, params.random_max_period
    );
    if found.is_some() {
        return (found, scope);
    }
    let found = random_tapes(alphabet, params.random_count, params.random_max_period, params.seed)
        .into_iter()
        .find(|c| !pred(c));
    (found, scope)
}

/// Both compositions are the identity, on periodic tapes.
pub fn check_inverse_pair(
    suite: &str,
    name: &str,
    forward: &dyn TapeMap,
    backward: &dyn TapeMap,
    params: &VerifyParams,
) -> Record {
    let a = forward.alphabet().clone();
    let (bad, scope) = counterexample(&a, params, |c| {
        backward.apply_cells(&forward.apply_cells(c)) == c
            && forward.apply_cells(&backward.apply_cells(c)) == c
    });
    Record::check(suite, format!("{name}.inverse_on_tapes"), bad.is_none(), || {
        show(&a, bad.as_deref().unwrap())
    })
    .with_detail(scope)
}

pub fn check_rotation_equivariance(suite: &str, name: &str, map: &dyn TapeMap, params: &VerifyParams) -> Record {
    let a = map.alphabet().clone();
    let (bad, scope) = counterexample(&a, params, |c| {
        map.apply_cells(&rotate(c, 1)) == rotate(&map.apply_cells(c), 1)
    });
    Record::check(suite, format!("{name}.rotation_equivariance"), bad.is_none(), || {
        show(&a, bad.as_deref().unwrap())
    })
    .with_detail(scope)
}

pub fn check_zero_fixed(suite: &str, name: &str, map: &dyn TapeMap, max_period: usize) -> Record {
    let a = map.alphabet();
    let bad = (1..=max_period).find(|&n| {
        let z = vec![a.zero(); n];
        map.apply_cells(&z) != z
    });
    Record::check(suite, format!("{name}.fixes_zero"), bad.is_none(), || {
        format!("period={}", bad.unwrap())
    })
}

fn exact_identity(suite: &str, check: String, code: &SlidingBlockCode, budget: u128) -> Option<Record> {
    match code.is_identity(budget) {
        IdentityCheck::Identity => Some(Record::pass(suite, check).with_detail("exact")),
        IdentityCheck::Differs(w) => Some(
            Record::fail(suite, check, format!("window={w:?}")).with_detail("exact"),
        ),
        IdentityCheck::BudgetExceeded { .. } => None,
    }
}

/// Inverse, zero and equivariance checks for an automorphism.
pub fn verify_automorphism(a: &Automorphism, params: &VerifyParams) -> Report {
    let suite = "core";
    let mut report = Report::new();
    let fg = SlidingBlockCode::compose(&a.forward, &a.backward).expect("shared alphabet");
    let gf = SlidingBlockCode::compose(&a.backward, &a.forward).expect("shared alphabet");
    let exact = exact_identity(suite, format!("{}.forward_after_backward", a.name), &fg, params.window_budget)
        .zip(exact_identity(suite, format!("{}.backward_after_forward", a.name), &gf, params.window_budget));
    match exact {
        Some((r1, r2)) => {
            report.push(r1);
            report.push(r2);
        }
        None => report.push(check_inverse_pair(suite, &a.name, &a.forward, &a.backward, params)),
    }
    if a.fixes_zero {
        report.push(check_zero_fixed(suite, &a.name, &a.forward, params.max_period));
    }
    let sampled = VerifyParams { max_period: params.max_period.min(6), ..params.clone() };
    report.push(check_rotation_equivariance(suite, &a.name, &a.forward, &sampled));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_pair_passes() {
        let a = Alphabet::numeric(2).unwrap();
        let r = verify_automorphism(&Automorphism::shift(&a), &VerifyParams::default());
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn shift_twice_fails() {
        let a = Alphabet::numeric(2).unwrap();
        let s = SlidingBlockCode::shift(&a, 1);
        let bogus = Automorphism::new("s_s", s.clone(), s).unwrap();
        let r = verify_automorphism(&bogus, &VerifyParams::default());
        assert!(!r.all_passed());
    }

    #[test]
    fn sampled_path_when_budget_small() {
        let a = Alphabet::numeric(2).unwrap();
        let params = VerifyParams { window_budget: 1, random_count: 50, ..Default::default() };
        let r = verify_automorphism(&Automorphism::shift(&a), &params);
        assert!(r.all_passed());
        assert!(r.records.iter().any(|x| x.check == "shift.inverse_on_tapes"));
    }

    #[test]
    fn odometer_enumerates_everything() {
        let a = Alphabet::numeric(3).unwrap();
        let mut count = 0;
        find_tape::<()>(&a, &[1, 2, 3], |_| {
            count += 1;
            None
        });
        assert_eq!(count, 3 + 9 + 27);
    }
}
