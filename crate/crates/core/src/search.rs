//! Persistent, resumable, optionally parallel search runs.
//!
//! Work is split per prime power. Workers may finish out of order, but a
//! reorder buffer emits results strictly by ascending `q`, so the output
//! stream is byte-identical for any worker count. After each fully emitted
//! `q` the checkpoint is rewritten; killing a run between checkpoints and
//! resuming it reproduces the exact same file as an uninterrupted run.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::mpsc;
use std::thread;

use sha2::{Digest, Sha256};

use crate::coverage::{check_one, prime_powers_up_to, triple_one, SearchHit};
use crate::error::{Error, Result};
use crate::field::{build_field_with_capacity, FieldSpec, DEFAULT_CAPACITY};
use crate::record::{read_records, Checkpoint, RecordKind, ResultRecord};

/// What to search for.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SearchKind {
    /// Pairs `(q, k)` with `C_m + C_k = F_q`.
    Pair { m: u64 },
    /// Pairs `(q, k)` with `(C_3 + C_4) + C_k = F_q`; hits carry `m = 0`.
    Triple,
}

impl SearchKind {
    fn record_kind(self) -> RecordKind {
        match self {
            SearchKind::Pair { .. } => RecordKind::PairSearch,
            SearchKind::Triple => RecordKind::TripleSearch,
        }
    }

    fn canonical_command(self, limit: u64) -> String {
        match self {
            SearchKind::Pair { m } => format!("search m={m} limit={limit}"),
            SearchKind::Triple => format!("triple limit={limit}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub kind: SearchKind,
    pub limit: u64,
    /// Worker threads; clamped to at least 1. Output does not depend on it.
    pub jobs: usize,
    /// JSON-lines destination. `None` collects hits in memory only and
    /// disables checkpointing.
    pub out_path: Option<PathBuf>,
    /// Continue a previous run with the same command fingerprint.
    pub resume: bool,
    /// Stop gracefully once this `q` has been completed and checkpointed;
    /// used for batch scheduling and for exercising resume in tests.
    pub stop_after_q: Option<u64>,
    /// Field capacity limit (see [`crate::field::capacity_from_env`]).
    pub capacity: u64,
}

impl SearchConfig {
    pub fn new(kind: SearchKind, limit: u64) -> Self {
        SearchConfig {
            kind,
            limit,
            jobs: 1,
            out_path: None,
            resume: false,
            stop_after_q: None,
            capacity: DEFAULT_CAPACITY,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    /// Every hit of the search so far, in `(q, k)` order. When an output
    /// file is in play this reflects the whole file, including portions
    /// written by earlier (resumed-over) runs.
    pub hits: Vec<SearchHit>,
    /// False when the run stopped at `stop_after_q` before exhausting the
    /// prime-power list.
    pub completed: bool,
    /// Largest `|C_3 + C_4|` seen by this run (triple searches only).
    pub max_left_size: Option<u64>,
    /// CSV summary location, written once a run completes with an out path.
    pub csv_path: Option<PathBuf>,
}

/// SHA-256 over the canonical command string; identifies which command a
/// checkpoint and output file belong to.
pub fn command_fingerprint(kind: SearchKind, limit: u64) -> String {
    let digest = Sha256::digest(kind.canonical_command(limit).as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Checkpoint file location for an output path: `<out>.checkpoint`.
pub fn checkpoint_path(out: &Path) -> PathBuf {
    let mut os = out.as_os_str().to_os_string();
    os.push(".checkpoint");
    PathBuf::from(os)
}

/// CSV summary location for an output path: `<out stem>.csv`.
pub fn csv_path(out: &Path) -> PathBuf {
    out.with_extension("csv")
}

struct QResult {
    hits: Vec<SearchHit>,
    left_size: u64,
}

fn run_q(spec: FieldSpec, kind: SearchKind, capacity: u64) -> Result<QResult> {
    let field = build_field_with_capacity(spec, capacity)?;
    match kind {
        SearchKind::Pair { m } => Ok(QResult {
            hits: check_one(&field, m)?,
            left_size: 0,
        }),
        SearchKind::Triple => {
            let (hits, left_size) = triple_one(&field)?;
            Ok(QResult { hits, left_size })
        }
    }
}

fn count_lines(path: &Path) -> Result<u64> {
    let text = std::fs::read_to_string(path)?;
    Ok(text.lines().filter(|l| !l.trim().is_empty()).count() as u64)
}

/// Execute a search run. See the module docs for the persistence model.
pub fn run_search(cfg: &SearchConfig) -> Result<SearchOutcome> {
    if let SearchKind::Pair { m } = cfg.kind {
        if m < 2 {
            return Err(Error::InvalidExponent(m));
        }
    }
    if cfg.limit > cfg.capacity {
        return Err(Error::CapacityExceeded {
            q: cfg.limit,
            limit: cfg.capacity,
        });
    }
    let jobs = cfg.jobs.max(1);
    let fingerprint = command_fingerprint(cfg.kind, cfg.limit);
    let ckpt_path = cfg.out_path.as_deref().map(checkpoint_path);

    let mut emitted: u64 = 0;
    let mut start_after: u64 = 0;
    let mut writer: Option<BufWriter<File>> = None;

    if let Some(out) = &cfg.out_path {
        if cfg.resume {
            if let Some(ck) = Checkpoint::load(ckpt_path.as_deref().unwrap())? {
                if ck.fingerprint != fingerprint {
                    return Err(Error::CheckpointMismatch(format!(
                        "the checkpoint belongs to a different command \
                         (found fingerprint {}, this command is {})",
                        ck.fingerprint, fingerprint
                    )));
                }
                if !out.exists() {
                    return Err(Error::CheckpointMismatch(format!(
                        "checkpoint present but output file {} is missing",
                        out.display()
                    )));
                }
                let lines = count_lines(out)?;
                if lines != ck.emitted_hit_count {
                    return Err(Error::CheckpointMismatch(format!(
                        "output file has {lines} records but the checkpoint \
                         expects {}",
                        ck.emitted_hit_count
                    )));
                }
                emitted = ck.emitted_hit_count;
                start_after = ck.last_completed_q;
                writer = Some(BufWriter::new(
                    OpenOptions::new().append(true).open(out)?,
                ));
            } else {
                writer = Some(BufWriter::new(File::create(out)?));
            }
        } else {
            writer = Some(BufWriter::new(File::create(out)?));
        }
    } else if cfg.resume {
        return Err(Error::PreconditionViolated(
            "resume requires an output path".into(),
        ));
    }

    let todo: Vec<FieldSpec> = prime_powers_up_to(cfg.limit)
        .into_iter()
        .filter(|s| s.q > start_after)
        .collect();

    let record_kind = cfg.kind.record_kind();
    let mut new_hits: Vec<SearchHit> = Vec::new();
    let mut max_left_size: Option<u64> = match cfg.kind {
        SearchKind::Triple => Some(0),
        SearchKind::Pair { .. } => None,
    };
    let mut stopped = false;

    // Emits one completed q: streams its hit records, advances the
    // checkpoint, and reports whether the run should keep going.
    let mut emit = |q: u64, r: QResult| -> Result<bool> {
        for hit in &r.hits {
            if let Some(w) = writer.as_mut() {
                writeln!(w, "{}", ResultRecord::from_hit(hit, record_kind).to_json_line())?;
            }
            new_hits.push(*hit);
            emitted += 1;
        }
        if let Some(w) = writer.as_mut() {
            w.flush()?;
            Checkpoint {
                fingerprint: fingerprint.clone(),
                last_completed_q: q,
                emitted_hit_count: emitted,
            }
            .save(ckpt_path.as_deref().unwrap())?;
        }
        if let Some(max) = max_left_size.as_mut() {
            *max = (*max).max(r.left_size);
        }
        Ok(cfg.stop_after_q.map_or(true, |s| q < s))
    };

    if jobs == 1 || todo.len() <= 1 {
        for spec in &todo {
            let r = run_q(*spec, cfg.kind, cfg.capacity)?;
            if !emit(spec.q, r)? {
                stopped = true;
                break;
            }
        }
    } else {
        let next = AtomicUsize::new(0);
        let stop = AtomicBool::new(false);
        let kind = cfg.kind;
        let capacity = cfg.capacity;
        let todo_ref = &todo;
        let (tx, rx) = mpsc::channel::<(usize, Result<QResult>)>();
        thread::scope(|scope| -> Result<()> {
            for _ in 0..jobs.min(todo_ref.len()) {
                let tx = tx.clone();
                let next = &next;
                let stop = &stop;
                scope.spawn(move || loop {
                    if stop.load(Ordering::Relaxed) {
                        break;
                    }
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= todo_ref.len() {
                        break;
                    }
                    let r = run_q(todo_ref[i], kind, capacity);
                    if tx.send((i, r)).is_err() {
                        break;
                    }
                });
            }
            drop(tx);

            let mut pending: BTreeMap<usize, Result<QResult>> = BTreeMap::new();
            let mut next_emit = 0usize;
            while next_emit < todo_ref.len() && !stopped {
                let Ok((i, r)) = rx.recv() else {
                    // All workers gone; anything unemitted is an internal bug.
                    break;
                };
                pending.insert(i, r);
                while let Some(r) = pending.remove(&next_emit) {
                    // Dropping rx on error unblocks the workers via failed sends.
                    let r = match r {
                        Ok(r) => r,
                        Err(e) => {
                            stop.store(true, Ordering::Relaxed);
                            return Err(e);
                        }
                    };
                    let keep_going = emit(todo_ref[next_emit].q, r)?;
                    next_emit += 1;
                    if !keep_going {
                        stopped = true;
                        stop.store(true, Ordering::Relaxed);
                        break;
                    }
                }
            }
            Ok(())
        })?;
    }

    let completed = !stopped;
    drop(writer);

    let mut csv = None;
    let hits = match &cfg.out_path {
        Some(out) => {
            let records = read_records(out)?;
            let hits: Vec<SearchHit> = records
                .iter()
                .map(|r| SearchHit { q: r.q, p: r.p, v: r.v, m: r.m, k: r.k })
                .collect();
            if completed {
                let path = csv_path(out);
                write_csv(&path, &hits)?;
                csv = Some(path);
            }
            hits
        }
        None => new_hits,
    };

    Ok(SearchOutcome {
        hits,
        completed,
        max_left_size,
        csv_path: csv,
    })
}

/// Summary table as CSV with the fixed header `q,p,v,m,k`.
pub fn write_csv(path: &Path, hits: &[SearchHit]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "q,p,v,m,k")?;
    for h in hits {
        writeln!(w, "{},{},{},{},{}", h.q, h.p, h.v, h.m, h.k)?;
    }
    w.flush()?;
    Ok(())
}
