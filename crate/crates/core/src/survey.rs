//! Exhaustive surveys of realized `(depth, dim)` pairs, with resumable
//! checkpoints and diffs against a target pair set.

use std::collections::{BTreeMap, HashMap};
use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::analysis::depth_dim;
use crate::canon::{canonical_form, CanonicalForm};
use crate::enumerate::{GraphClass, GraphStream};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::Graph;
use crate::graph6::emit_graph6;
use crate::homology::{DepthPolicy, Field};
use crate::pairsets::{render_staircase, Pair, PairSet};

/// Version of the JSON layout of [`SurveyResult`] and of checkpoint files.
pub const SCHEMA_VERSION: u32 = 1;

/// Checkpoint records are flushed to disk at least this often.
pub const FLUSH_EVERY: usize = 10_000;

/// Graphs per chunk when surveying an external stream.
const EXTERNAL_CHUNK: usize = 4096;

#[derive(Clone, Debug)]
pub struct SurveyOptions {
    pub field: Field,
    pub policy: DepthPolicy,
    pub exec: Exec,
    pub checkpoint: Option<PathBuf>,
}

impl Default for SurveyOptions {
    fn default() -> Self {
        SurveyOptions {
            field: Field::GF2,
            policy: DepthPolicy::Auto,
            exec: Exec::default(),
            checkpoint: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCount {
    pub a: usize,
    pub b: usize,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurveyResult {
    pub schema: u32,
    pub n: usize,
    pub class: GraphClass,
    pub field: Field,
    pub policy: DepthPolicy,
    /// Graphs folded into the result, including those taken from a checkpoint.
    pub examined: u64,
    /// Graphs whose pair came from a checkpoint instead of being recomputed.
    pub resumed: u64,
    /// Realized pairs, each with the first graph in stream order realizing it.
    pub realized: PairSet,
    pub multiplicities: Vec<PairCount>,
    pub elapsed_ms: u64,
}

impl SurveyResult {
    pub fn compare(&self, target: &PairSet) -> Result<DiffReport> {
        compare(&self.realized, target)
    }
}

/// All connected graphs (or connected chordal graphs) on `n` vertices.
pub fn survey(n: usize, class: GraphClass, opts: &SurveyOptions) -> Result<SurveyResult> {
    let start = Instant::now();
    let mut stream = GraphStream::new(n, class, opts.exec)?;
    let mut run = Run::new(n, class, opts)?;
    while let Some(batch) = stream.next_batch() {
        run.fold(&batch, true)?;
    }
    run.finish(start)
}

/// Surveys an external graph stream, such as graph6 lines from another
/// generator. Every graph must have `n` vertices and belong to `class`;
/// duplicates are counted as often as they appear.
pub fn survey_graphs<I>(n: usize, class: GraphClass, graphs: I, opts: &SurveyOptions) -> Result<SurveyResult>
where
    I: IntoIterator<Item = Result<Graph>>,
{
    let start = Instant::now();
    let mut run = Run::new(n, class, opts)?;
    let mut chunk = Vec::with_capacity(EXTERNAL_CHUNK);
    for g in graphs {
        let g = g?;
        if g.n() != n || !class.contains(&g) {
            return Err(Error::NotInClass {
                graph6: emit_graph6(&g),
                class: class.name(),
                n,
            });
        }
        chunk.push(g);
        if chunk.len() == EXTERNAL_CHUNK {
            run.fold(&chunk, false)?;
            chunk.clear();
        }
    }
    run.fold(&chunk, false)?;
    run.finish(start)
}

struct Run<'a> {
    n: usize,
    class: GraphClass,
    opts: &'a SurveyOptions,
    realized: PairSet,
    counts: BTreeMap<Pair, u64>,
    examined: u64,
    resumed: u64,
    checkpoint: Option<Checkpoint>,
}

impl<'a> Run<'a> {
    fn new(n: usize, class: GraphClass, opts: &'a SurveyOptions) -> Result<Self> {
        let header = CheckpointHeader {
            schema: SCHEMA_VERSION,
            n,
            class,
            field: opts.field,
        };
        let checkpoint = opts
            .checkpoint
            .as_deref()
            .map(|p| Checkpoint::open(p, &header))
            .transpose()?;
        Ok(Run {
            n,
            class,
            opts,
            realized: PairSet::new(n),
            counts: BTreeMap::new(),
            examined: 0,
            resumed: 0,
            checkpoint,
        })
    }

    /// Folds one batch in order. `canonical` says the graphs are already in
    /// canonical form, which saves relabeling them for checkpoint keys.
    fn fold(&mut self, graphs: &[Graph], canonical: bool) -> Result<()> {
        let exec = self.opts.exec;
        let forms: Option<Vec<CanonicalForm>> = self.checkpoint.as_ref().map(|_| {
            if canonical {
                graphs
                    .iter()
                    .map(|g| CanonicalForm::from_canonical_graph_unchecked(*g))
                    .collect()
            } else {
                exec.map(graphs, canonical_form)
            }
        });
        let known: Vec<Option<Pair>> = match (&self.checkpoint, &forms) {
            (Some(cp), Some(forms)) => forms.iter().map(|f| cp.known.get(f).copied()).collect(),
            _ => vec![None; graphs.len()],
        };
        let jobs: Vec<(&Graph, Option<Pair>)> = graphs.iter().zip(known).collect();
        let (field, policy) = (self.opts.field, self.opts.policy);
        let results = exec.map(&jobs, |&(g, known)| match known {
            Some(pair) => Ok((pair, true)),
            None => depth_dim(g, field, policy, Exec::Sequential).map(|p| (p, false)),
        });
        for (i, (g, r)) in graphs.iter().zip(results).enumerate() {
            let ((a, b), was_known) = r?;
            if !self.realized.contains(a, b) {
                self.realized.insert_with_witness(a, b, *g)?;
            }
            *self.counts.entry((a, b)).or_default() += 1;
            self.examined += 1;
            if was_known {
                self.resumed += 1;
            } else if let (Some(cp), Some(forms)) = (&mut self.checkpoint, &forms) {
                cp.append(forms[i], a, b)?;
            }
        }
        if let Some(cp) = &mut self.checkpoint {
            cp.maybe_flush()?;
        }
        Ok(())
    }

    fn finish(mut self, start: Instant) -> Result<SurveyResult> {
        if let Some(cp) = &mut self.checkpoint {
            cp.flush()?;
        }
        Ok(SurveyResult {
            schema: SCHEMA_VERSION,
            n: self.n,
            class: self.class,
            field: self.opts.field,
            policy: self.opts.policy,
            examined: self.examined,
            resumed: self.resumed,
            realized: self.realized,
            multiplicities: self
                .counts
                .into_iter()
                .map(|((a, b), count)| PairCount { a, b, count })
                .collect(),
            elapsed_ms: start.elapsed().as_millis() as u64,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct CheckpointHeader {
    schema: u32,
    n: usize,
    class: GraphClass,
    field: Field,
}

#[derive(Serialize, Deserialize)]
struct CheckpointRecord {
    form: CanonicalForm,
    a: usize,
    b: usize,
}

/// Append-only JSON-lines file: a header line, then one record per graph.
struct Checkpoint {
    known: HashMap<CanonicalForm, Pair>,
    writer: BufWriter<File>,
    pending: usize,
}

impl Checkpoint {
    fn open(path: &Path, header: &CheckpointHeader) -> Result<Self> {
        let mut known = HashMap::new();
        let existing = match std::fs::read_to_string(path) {
            Ok(text) => text,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => String::new(),
            Err(e) => return Err(e.into()),
        };
        let mut keep = existing.len();
        if !existing.is_empty() {
            let lines: Vec<&str> = existing.split_inclusive('\n').collect();
            let mut offset = 0;
            for (i, line) in lines.iter().enumerate() {
                let lineno = i + 1;
                let complete = line.ends_with('\n');
                let body = line.trim_end();
                let parsed = if i == 0 {
                    serde_json::from_str::<CheckpointHeader>(body).map(|h| {
                        (h != *header).then(|| {
                            format!(
                                "checkpoint is for n={} class={} field={}, not n={} class={} field={}",
                                h.n,
                                h.class,
                                h.field.characteristic(),
                                header.n,
                                header.class,
                                header.field.characteristic()
                            )
                        })
                    })
                } else {
                    serde_json::from_str::<CheckpointRecord>(body).map(|r| {
                        known.insert(r.form, (r.a, r.b));
                        None
                    })
                };
                match parsed {
                    Ok(None) => {}
                    Ok(Some(reason)) => return Err(Error::CheckpointCorrupt { line: lineno, reason }),
                    // an interrupted write leaves a partial last line; drop it
                    Err(_) if !complete && i > 0 => {
                        keep = offset;
                        break;
                    }
                    Err(e) => {
                        return Err(Error::CheckpointCorrupt {
                            line: lineno,
                            reason: e.to_string(),
                        })
                    }
                }
                if !complete {
                    // the header or a record parsed but lacks its newline
                    keep = offset + line.len();
                    break;
                }
                offset += line.len();
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        file.set_len(keep as u64)?;
        let mut writer = BufWriter::new(file);
        if existing.is_empty() {
            serde_json::to_writer(&mut writer, header)?;
            writer.write_all(b"\n")?;
        } else if keep > 0 && !existing[..keep].ends_with('\n') {
            writer.write_all(b"\n")?;
        }
        writer.flush()?;
        Ok(Checkpoint {
            known,
            writer,
            pending: 0,
        })
    }

    fn append(&mut self, form: CanonicalForm, a: usize, b: usize) -> Result<()> {
        serde_json::to_writer(&mut self.writer, &CheckpointRecord { form, a, b })?;
        self.writer.write_all(b"\n")?;
        self.pending += 1;
        Ok(())
    }

    fn maybe_flush(&mut self) -> Result<()> {
        if self.pending >= FLUSH_EVERY {
            self.flush()?;
        }
        Ok(())
    }

    fn flush(&mut self) -> Result<()> {
        self.writer.flush()?;
        self.pending = 0;
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompareStatus {
    /// Same pairs.
    Equal,
    /// Every target pair is realized, and some extra pairs are too.
    Inclusion,
    /// Some target pair is not realized.
    Contradiction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffReport {
    pub n: usize,
    pub status: CompareStatus,
    pub common: Vec<Pair>,
    /// Realized but not in the target.
    pub extra: Vec<Pair>,
    /// In the target but not realized.
    pub missing: Vec<Pair>,
}

pub fn compare(realized: &PairSet, target: &PairSet) -> Result<DiffReport> {
    let extra = realized.difference(target)?.to_vec();
    let missing = target.difference(realized)?.to_vec();
    let common = realized.intersection(target)?.to_vec();
    let status = match (extra.is_empty(), missing.is_empty()) {
        (true, true) => CompareStatus::Equal,
        (false, true) => CompareStatus::Inclusion,
        _ => CompareStatus::Contradiction,
    };
    Ok(DiffReport {
        n: realized.n(),
        status,
        common,
        extra,
        missing,
    })
}

impl DiffReport {
    /// Staircase with `=` for pairs in both sets, `+` for realized-only,
    /// `-` for target-only and `.` for neither.
    pub fn render(&self) -> String {
        let mark = |a: usize, b: usize| {
            if self.common.contains(&(a, b)) {
                '='
            } else if self.extra.contains(&(a, b)) {
                '+'
            } else if self.missing.contains(&(a, b)) {
                '-'
            } else {
                '.'
            }
        };
        render_staircase(self.n, mark)
    }
}
