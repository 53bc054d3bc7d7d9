//! Trial-level parallelism. Trials are split into fixed-size chunks whose
//! accumulators are merged in chunk order, so results do not depend on the
//! number of threads.

use crate::error::Result;

const CHUNK: u64 = 2048;

/// Runs `step(acc, trial)` for every trial in `0..trials` and merges the
/// per-chunk accumulators left to right.
pub(crate) fn fold_trials<A, I, S, M>(trials: u64, init: I, step: S, merge: M) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync,
    S: Fn(&mut A, u64) -> Result<()> + Sync,
    M: Fn(A, A) -> A,
{
    let chunks = trials.div_ceil(CHUNK);
    let run_chunk = |c: u64| -> Result<A> {
        let mut acc = init();
        for t in c * CHUNK..((c + 1) * CHUNK).min(trials) {
            step(&mut acc, t)?;
        }
        Ok(acc)
    };

    #[cfg(feature = "parallel")]
    let parts: Vec<Result<A>> = {
        use rayon::prelude::*;
        (0..chunks).into_par_iter().map(run_chunk).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<Result<A>> = (0..chunks).map(run_chunk).collect();

    let mut out = init();
    for part in parts {
        out = merge(out, part?);
    }
    Ok(out)
}

/// Caps the worker pool at `DPBLOOM_THREADS` threads when that variable is a
/// positive integer. `0`, unset or unparsable means automatic sizing.
pub fn configure_threads_from_env() {
    #[cfg(feature = "parallel")]
    if let Some(n) = std::env::var("DPBLOOM_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        // a second call finds the pool already built; keep the first setting
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fold_is_ordered_and_complete() {
        let seen = fold_trials(
            10_000,
            Vec::new,
            |acc: &mut Vec<u64>, t| {
                acc.push(t);
                Ok(())
            },
            |mut a, b| {
                a.extend(b);
                a
            },
        )
        .unwrap();
        assert_eq!(seen, (0..10_000).collect::<Vec<_>>());
    }

    #[test]
    fn errors_propagate() {
        let r = fold_trials(
            5000,
            || 0u64,
            |_, t| {
                if t == 4321 {
                    Err(crate::Error::Numerical("boom".into()))
                } else {
                    Ok(())
                }
            },
            |a, b| a + b,
        );
        assert!(r.is_err());
    }
}
