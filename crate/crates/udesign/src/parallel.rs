// SPDX-License-Identifier: Apache-2.0

//! Threaded drivers. Results do not depend on the thread count: every unit
//! of work owns a child stream and results are combined in index order.

use std::thread;
use std::time::Instant;

use udesign_core::search::{run_restart, select, RestartResult, SearchConfig, SearchTrace};
use udesign_core::tomography::{Experiment, TomographyReport, TrialOutcome};
use udesign_core::Result;

/// Runs `f(i)` for `i` in `range` on up to `threads` scoped threads and
/// returns the results in index order.
fn map_indexed<T: Send>(
    range: std::ops::Range<usize>,
    threads: usize,
    f: impl Fn(usize) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    let len = range.len();
    let threads = threads.clamp(1, len.max(1));
    if threads == 1 {
        return range.map(&f).collect();
    }
    let chunk = len.div_ceil(threads);
    let f = &f;
    thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|k| {
                let lo = range.start + k * chunk;
                let hi = (lo + chunk).min(range.end);
                s.spawn(move || (lo..hi).map(f).collect::<Result<Vec<T>>>())
            })
            .collect();
        let mut out = Vec::with_capacity(len);
        for h in handles {
            out.extend(h.join().expect("worker thread panicked")?);
        }
        Ok(out)
    })
}

/// Multi-restart search, `threads` restarts at a time. Stops after the
/// batch containing the first converged restart; [`select`] then discards
/// later restarts, so the outcome matches the sequential search.
pub fn search(config: &SearchConfig, threads: usize) -> Result<SearchTrace> {
    config.validate()?;
    let start = Instant::now();
    let threads = threads.max(1);
    let mut results: Vec<RestartResult> = Vec::new();
    let mut next = 0;
    while next < config.restarts {
        let hi = (next + threads).min(config.restarts);
        let batch = map_indexed(next..hi, threads, |i| run_restart(config, i))?;
        let done = batch.iter().any(|r| r.converged);
        results.extend(batch);
        next = hi;
        if done {
            break;
        }
    }
    let mut trace = select(config, results)?;
    trace.wall_clock_seconds = Some(start.elapsed().as_secs_f64());
    Ok(trace)
}

/// Runs `trials` tomography trials.
pub fn simulate(
    experiment: &Experiment,
    shots: u64,
    trials: usize,
    seed: u64,
    threads: usize,
) -> Result<TomographyReport> {
    if shots == 0 {
        return experiment.simulate(shots, trials, seed);
    }
    let outcomes: Vec<TrialOutcome> = map_indexed(0..trials, threads, |i| experiment.run_trial(shots, seed, i))?;
    experiment.report(shots, seed, &outcomes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use udesign_core::designs::pu2_11pt;
    use udesign_core::qops::{ChannelClass, QuantumChannel};

    #[test]
    fn thread_count_does_not_change_reports() {
        let ex =
            Experiment::from_design(&pu2_11pt().unwrap(), &QuantumChannel::identity(2), ChannelClass::Unital).unwrap();
        let one = simulate(&ex, 2000, 13, 5, 1).unwrap();
        let four = simulate(&ex, 2000, 13, 5, 4).unwrap();
        assert_eq!(one, four);
        assert_eq!(one, ex.simulate(2000, 13, 5).unwrap());
    }

    #[test]
    fn thread_count_does_not_change_search() {
        let mut c = SearchConfig::new(2, 5, 2);
        c.restarts = 5;
        c.max_iterations = 30;
        let a = search(&c, 1).unwrap();
        let b = search(&c, 3).unwrap();
        let seq = udesign_core::search::search(&c).unwrap();
        assert_eq!(a.gap, b.gap);
        assert_eq!(a.gap, seq.gap);
        assert_eq!(a.restart, b.restart);
        assert_eq!(a.best_gaps, seq.best_gaps);
    }
}
