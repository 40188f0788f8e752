//! Exhaustive scan of all 2^24 elementary-triplet sets over four variables.

use std::sync::atomic::{AtomicU64, Ordering};

use super::ground::{Engine, RuleSet};
use crate::basic_set::BasicSet;
use crate::error::{Error, Result};
use crate::structure::CIStructure;

const WIDTH: u32 = 24;
const CHUNK: u32 = 1 << 16;

/// Options for [`enumerate`].
#[derive(Default)]
pub struct EnumerateOptions<'a> {
    /// Worker threads; 0 means all available cores.
    pub threads: usize,
    /// Keep every closed set, not just the count.
    pub collect: bool,
    /// Called with `(done, total)` candidate counts as chunks finish.
    pub progress: Option<&'a (dyn Fn(u64, u64) + Sync)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub count: u64,
    /// Closed sets as 24-bit masks in increasing order, when collected.
    pub members: Option<Vec<u32>>,
}

impl Enumeration {
    pub fn structures(&self, base: &BasicSet) -> Result<Vec<CIStructure>> {
        self.members
            .iter()
            .flatten()
            .map(|&b| CIStructure::from_bits(base.clone(), b as u128))
            .collect()
    }
}

/// Counts (and optionally lists) the sets closed under `rules`.
pub fn enumerate(rules: RuleSet, opts: &EnumerateOptions<'_>) -> Result<Enumeration> {
    let engine = Engine::xyzu(rules);
    let table = engine
        .narrow_rules()
        .ok_or(Error::UnsupportedBaseSize(engine.base().size()))?;
    let threads = match opts.threads {
        0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
        t => t,
    };
    let total = 1u64 << WIDTH;
    let chunks = (1u32 << WIDTH) / CHUNK;
    let next = AtomicU64::new(0);
    let done = AtomicU64::new(0);
    let mut parts: Vec<(u32, u64, Vec<u32>)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|_| {
                let (table, next, done) = (&table, &next, &done);
                scope.spawn(move || {
                    let mut found = Vec::new();
                    loop {
                        let c = next.fetch_add(1, Ordering::Relaxed) as u32;
                        if c >= chunks {
                            break;
                        }
                        let mut count = 0u64;
                        let mut members = Vec::new();
                        for s in c * CHUNK..(c + 1) * CHUNK {
                            if closed(table, s) {
                                count += 1;
                                if opts.collect {
                                    members.push(s);
                                }
                            }
                        }
                        found.push((c, count, members));
                        let d = done.fetch_add(CHUNK as u64, Ordering::Relaxed) + CHUNK as u64;
                        if let Some(cb) = opts.progress {
                            cb(d, total);
                        }
                    }
                    found
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    parts.sort_by_key(|p| p.0);
    let count = parts.iter().map(|p| p.1).sum();
    let members = opts
        .collect
        .then(|| parts.into_iter().flat_map(|p| p.2).collect());
    Ok(Enumeration { count, members })
}

#[inline]
fn closed(table: &[(u32, u32)], s: u32) -> bool {
    table.iter().all(|&(p, c)| p & !s != 0 || c & !s == 0)
}
