//! Scenario runner, sweeps and structural summaries behind the `finalg`
//! binary.

pub mod builtins;
pub mod describe;
pub mod report;
pub mod scenarios;
pub mod sweep;

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use finalg::liestruct::Limits;

pub use report::{CheckRecord, Outcome};

/// Flags shared by all subcommands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Settings {
    pub seed: u64,
    pub limits: Limits,
    /// Largest unit group on which scenarios run group computations.
    pub max_group_card: u64,
    pub jobs: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            seed: 0,
            limits: Limits::default(),
            max_group_card: finalg::algebra::MAX_UNIT_SCAN,
            jobs: 1,
        }
    }
}

/// Applies `work` to every item on `jobs` threads and returns the results
/// in input order.
pub fn parallel_map<T: Sync, R: Send>(items: &[T], jobs: usize, work: impl Fn(usize, &T) -> R + Sync) -> Vec<R> {
    let jobs = jobs.clamp(1, items.len().max(1));
    if jobs == 1 {
        return items.iter().enumerate().map(|(i, t)| work(i, t)).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    return;
                }
                let r = work(i, &items[i]);
                slots.lock().unwrap()[i] = Some(r);
            });
        }
    });
    slots.into_inner().unwrap().into_iter().map(|r| r.expect("every item processed")).collect()
}
