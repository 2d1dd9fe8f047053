use std::fmt::Write as _;
use std::io::{BufRead, Read};
use std::path::{Path, PathBuf};

use edgedepth::analysis::analyze_with;
use edgedepth::bouquet::{max_semi_strongly_disjoint_flowers, max_strongly_disjoint_flowers};
use edgedepth::checks::{run_one, CheckOptions, CHECK_COUNT};
use edgedepth::chordal::{chordal_depth_cover, chordal_depth_recursive, is_chordal};
use edgedepth::enumerate::{connected_graphs_with, GraphClass};
use edgedepth::graph6::{emit_edge_list, emit_graph6, parse_graph6, parse_graph_text};
use edgedepth::homology::{hochster_profile_with, HochsterOptions};
use edgedepth::independence::independence_number;
use edgedepth::pairsets::{chordal_witness, random_witness_hunt, witness_search, PairSet};
use edgedepth::survey::{compare, survey, survey_graphs, CompareStatus, SurveyOptions, SurveyResult};
use edgedepth::{cminus, cprime, cstar, DepthPolicy, Exec, Field};
use serde_json::json;

use crate::args::{Command, Format, GlobalOpts, SetName, SurveyArgs};
use crate::render;
use crate::{Failure, Report, EXIT_ASSERTION, EXIT_INCLUSION};

type Outcome = Result<Report, Failure>;

const DEFAULT_SEED: u64 = 0;

pub struct Context {
    field: Field,
    exec: Exec,
    policy: DepthPolicy,
    format: Format,
    out: Option<PathBuf>,
    checkpoint: Option<PathBuf>,
    seed: Option<u64>,
}

impl Context {
    /// Validates the shared flags before any computation.
    pub fn new(g: &GlobalOpts) -> Result<Self, Failure> {
        let field = Field::new(g.field).map_err(|e| Failure::Usage(e.to_string()))?;
        let exec = match g.threads {
            Some(0) => return Err(Failure::Usage("--threads must be at least 1".into())),
            Some(1) => Exec::Sequential,
            Some(k) => {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(k)
                    .build_global()
                    .map_err(|e| Failure::Usage(e.to_string()))?;
                Exec::Parallel
            }
            None => Exec::Parallel,
        };
        Ok(Context {
            field,
            exec,
            policy: if g.paranoid {
                DepthPolicy::Paranoid
            } else {
                DepthPolicy::Auto
            },
            format: g.format,
            out: g.out.clone(),
            checkpoint: g.checkpoint.clone(),
            seed: g.seed,
        })
    }

    pub fn emit(&self, text: &str) -> Result<(), Failure> {
        match &self.out {
            Some(path) => std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    pub fn run(&self, command: &Command) -> Outcome {
        match command {
            Command::Analyze { graphs, hochster } => self.analyze(graphs, *hochster),
            Command::Pairs { n, set } => self.pairs(*n, *set),
            Command::Witness { n, a, b, hunt, tries } => self.witness(*n, *a, *b, *hunt, *tries),
            Command::Survey(args) => self.survey(args),
            Command::Compare {
                result,
                n,
                class,
                target,
            } => self.compare(result.as_deref(), *n, *class, target),
            Command::Bouquet { graph } => self.bouquet(graph),
            Command::Check {
                paper: _,
                skip_stretch,
                only,
            } => self.check(*skip_stretch, only),
        }
    }

    fn survey_options(&self) -> SurveyOptions {
        SurveyOptions {
            field: self.field,
            policy: self.policy,
            exec: self.exec,
            checkpoint: self.checkpoint.clone(),
        }
    }

    fn analyze(&self, inputs: &[String], hochster: bool) -> Outcome {
        let texts: Vec<String> = if inputs.is_empty() {
            std::io::stdin()
                .lock()
                .lines()
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure::Malformed(e.to_string()))?
        } else {
            inputs.to_vec()
        };
        let policy = if hochster { DepthPolicy::Hochster } else { self.policy };
        let mut out = String::new();
        if self.format == Format::Csv {
            out.push_str(render::ANALYSIS_CSV_HEADER);
        }
        for (i, text) in texts.iter().map(|t| t.trim()).filter(|t| !t.is_empty()).enumerate() {
            let g = parse_graph_text(text).map_err(|e| Failure::Malformed(format!("{text:?}: {e}")))?;
            let a = analyze_with(&g, self.field, policy, self.exec)?;
            match self.format {
                Format::Json => out.push_str(&render::json(&a)),
                Format::Csv => out.push_str(&render::analysis_csv_row(&a)),
                Format::Table => {
                    if i > 0 {
                        out.push('\n');
                    }
                    out.push_str(&render::analysis_table(&a));
                }
            }
        }
        Ok(Report::ok(out))
    }

    fn pairs(&self, n: usize, which: SetName) -> Outcome {
        let (star, minus, prime) = (cstar(n)?, cminus(n)?, cprime(n)?);
        let (name, chosen) = match which {
            SetName::Cstar => ("C*", &star),
            SetName::Cminus => ("C-", &minus),
            SetName::Cprime => ("C'", &prime),
        };
        let extras = star.difference(&minus)?.to_vec();
        Ok(Report::ok(match self.format {
            Format::Json => serde_json::to_string(chosen).expect("serializable") + "\n",
            Format::Csv => chosen.to_csv(),
            Format::Table => {
                let mut s = format!("{name}({n}): {} pairs, '#' marks a member\n", chosen.len());
                s.push_str(&chosen.render_table());
                if extras.is_empty() {
                    let _ = writeln!(s, "C*({n}) = C-({n})");
                } else {
                    let _ = writeln!(s, "C*({n}) = C-({n}) ∪ {}", render::pairs(&extras));
                }
                let _ = writeln!(s, "C'({n}) = {}", render::pairs(&prime.to_vec()));
                s
            }
        }))
    }

    fn witness(&self, n: usize, a: usize, b: usize, hunt: bool, tries: usize) -> Outcome {
        let (g, source) = if a + b <= n && !hunt {
            (chordal_witness(n, a, b)?, "construction")
        } else if hunt {
            let seed = self.seed.unwrap_or_else(|| {
                eprintln!("seed = {DEFAULT_SEED} (default)");
                DEFAULT_SEED
            });
            match random_witness_hunt(n, a, b, tries, seed)? {
                Some(g) => (g, "random hunt"),
                None => {
                    return Err(Failure::Assertion(format!(
                        "no graph with (depth, dim) = ({a},{b}) on {n} vertices in {tries} random tries"
                    )))
                }
            }
        } else if n <= edgedepth::enumerate::MAX_N {
            let mut found = None;
            for class in [GraphClass::Chordal, GraphClass::All] {
                let graphs = connected_graphs_with(n, class, self.exec)?;
                found = witness_search(n, a, b, graphs)?;
                if found.is_some() {
                    break;
                }
            }
            match found {
                Some(g) => (g, "exhaustive search"),
                None => {
                    return Err(Failure::Assertion(format!(
                        "no connected graph on {n} vertices has (depth, dim) = ({a},{b})"
                    )))
                }
            }
        } else {
            return Err(Failure::Usage(format!(
                "a + b > n needs --hunt when n > {}",
                edgedepth::enumerate::MAX_N
            )));
        };

        let opts = HochsterOptions {
            exec: self.exec,
            ..HochsterOptions::default()
        };
        let profile = hochster_profile_with(&g, self.field, opts);
        let dim = independence_number(&g);
        let chordal = is_chordal(&g);
        let mut routes = vec![format!("homology over GF({})", self.field.characteristic())];
        let mut depths = vec![profile.depth];
        if chordal {
            routes.extend(["vertex cover".to_string(), "simplicial recursion".to_string()]);
            depths.push(chordal_depth_cover(&g)?);
            depths.push(chordal_depth_recursive(&g)?);
        }
        let verified = dim == b && depths.iter().all(|&d| d == a) && g.is_connected();
        let text = match self.format {
            Format::Json => render::json(json!({
                "n": n, "a": a, "b": b,
                "graph6": emit_graph6(&g),
                "edges": g.edges(),
                "dim": dim, "depth": profile.depth, "pdim": profile.pdim,
                "chordal": chordal,
                "source": source,
                "verified": verified,
            })),
            Format::Csv => format!(
                "graph6,n,dim,depth,chordal\n{},{n},{dim},{},{chordal}\n",
                emit_graph6(&g),
                profile.depth
            ),
            Format::Table => {
                let mut s = format!("{}\n", emit_graph6(&g));
                let _ = writeln!(s, "dim={dim} depth={} chordal={chordal}", profile.depth);
                let _ = writeln!(s, "edges {}", emit_edge_list(&g));
                let _ = writeln!(s, "source {source}");
                for (route, d) in routes.iter().zip(&depths) {
                    let _ = writeln!(s, "depth {d} by {route}");
                }
                let _ = writeln!(s, "pdim {} = n - depth", profile.pdim);
                s
            }
        };
        if verified {
            Ok(Report::ok(text))
        } else {
            self.emit(&text)?;
            Err(Failure::Assertion(format!("witness does not verify as ({a},{b})")))
        }
    }

    fn run_survey(&self, n: usize, class: GraphClass, from: Option<&Path>) -> Result<SurveyResult, Failure> {
        let opts = self.survey_options();
        Ok(match from {
            None => survey(n, class, &opts)?,
            Some(path) => {
                let text = read_input(path)?;
                let graphs = text
                    .lines()
                    .filter(|l| !l.trim().is_empty())
                    .map(|l| parse_graph6(l).map_err(edgedepth::Error::from));
                survey_graphs(n, class, graphs, &opts)?
            }
        })
    }

    fn survey(&self, args: &SurveyArgs) -> Outcome {
        let r = self.run_survey(args.n, args.class, args.from_graph6.as_deref())?;
        Ok(Report::ok(match self.format {
            Format::Json => serde_json::to_string(&r).expect("serializable") + "\n",
            Format::Csv => {
                let mut s = String::from("a,b,count,witness\n");
                for c in &r.multiplicities {
                    let w = r.realized.witness(c.a, c.b).map(emit_graph6).unwrap_or_default();
                    let _ = writeln!(s, "{},{},{},{w}", c.a, c.b, c.count);
                }
                s
            }
            Format::Table => {
                let mut s = format!(
                    "n={} class={} field=GF({}): {} graphs ({} from checkpoint), {} pairs, {} ms\n",
                    r.n,
                    r.class,
                    r.field.characteristic(),
                    r.examined,
                    r.resumed,
                    r.realized.len(),
                    r.elapsed_ms
                );
                s.push_str(&r.realized.render_table());
                for c in &r.multiplicities {
                    let w = r.realized.witness(c.a, c.b).map(emit_graph6).unwrap_or_default();
                    let _ = writeln!(s, "({},{}) x{} first {w}", c.a, c.b, c.count);
                }
                s
            }
        }))
    }

    fn compare(&self, result: Option<&Path>, n: Option<usize>, class: GraphClass, target: &str) -> Outcome {
        let realized = match (result, n) {
            (Some(path), _) => load_pairs(path)?,
            (None, Some(n)) => self.run_survey(n, class, None)?.realized,
            (None, None) => return Err(Failure::Usage("give --result or -n".into())),
        };
        let n = realized.n();
        let target_set = match target {
            "cstar" => cstar(n)?,
            "cminus" => cminus(n)?,
            path => load_pairs(Path::new(path))?,
        };
        let d = compare(&realized, &target_set)?;
        let code = match d.status {
            CompareStatus::Equal => 0,
            CompareStatus::Inclusion => EXIT_INCLUSION,
            CompareStatus::Contradiction => EXIT_ASSERTION,
        };
        let text = match self.format {
            Format::Json => render::json(&d),
            Format::Csv => {
                let mut s = String::from("a,b,status\n");
                let rows = [
                    (&d.common, "both"),
                    (&d.extra, "realized-only"),
                    (&d.missing, "target-only"),
                ];
                for (ps, tag) in rows {
                    for (a, b) in ps {
                        let _ = writeln!(s, "{a},{b},{tag}");
                    }
                }
                s
            }
            Format::Table => {
                let status = match d.status {
                    CompareStatus::Equal => "equal",
                    CompareStatus::Inclusion => "inclusion (target is a proper subset)",
                    CompareStatus::Contradiction => "contradiction (target pairs not realized)",
                };
                let mut s = format!("n={n}: {status}\n");
                s.push_str(&d.render());
                let _ = writeln!(s, "'=' both, '+' realized only, '-' target only");
                let _ = writeln!(s, "realized only: {}", render::pairs(&d.extra));
                let _ = writeln!(s, "target only: {}", render::pairs(&d.missing));
                s
            }
        };
        Ok(Report { text, code })
    }

    fn bouquet(&self, text: &str) -> Outcome {
        let g = parse_graph_text(text).map_err(|e| Failure::Malformed(format!("{text:?}: {e}")))?;
        if g.edge_count() == 0 {
            return Err(Failure::Usage("bouquets need a graph with at least one edge".into()));
        }
        let (strong, sf) = max_strongly_disjoint_flowers(&g);
        let (semi, tf) = max_semi_strongly_disjoint_flowers(&g);
        let opts = HochsterOptions {
            exec: self.exec,
            ..HochsterOptions::default()
        };
        let pdim = hochster_profile_with(&g, self.field, opts).pdim;
        Ok(Report::ok(match self.format {
            Format::Json => render::json(json!({
                "graph6": emit_graph6(&g),
                "strongly_disjoint": { "flowers": strong, "family": sf },
                "semi_strongly_disjoint": { "flowers": semi, "family": tf },
                "pdim": pdim,
                "chordal": is_chordal(&g),
            })),
            Format::Csv => format!(
                "graph6,strongly_disjoint,semi_strongly_disjoint,pdim\n{},{strong},{semi},{pdim}\n",
                emit_graph6(&g)
            ),
            Format::Table => {
                let mut s = format!("{}\n", emit_graph6(&g));
                let _ = writeln!(s, "strongly disjoint flowers {strong}");
                s.push_str(&render::family(&sf));
                let _ = writeln!(s, "semi-strongly disjoint flowers {semi}");
                s.push_str(&render::family(&tf));
                let _ = writeln!(s, "pdim {pdim} (chordal: {})", is_chordal(&g));
                s
            }
        }))
    }

    fn check(&self, skip_stretch: bool, only: &[u8]) -> Outcome {
        let ids: Vec<u8> = if only.is_empty() {
            (1..=CHECK_COUNT).collect()
        } else {
            only.to_vec()
        };
        if let Some(bad) = ids.iter().find(|&&id| id == 0 || id > CHECK_COUNT) {
            return Err(Failure::Usage(format!("no check {bad}; ids run 1..={CHECK_COUNT}")));
        }
        let opts = CheckOptions {
            exec: self.exec,
            stretch: !skip_stretch,
        };
        let mut outcomes = Vec::new();
        let mut text = String::new();
        for id in ids {
            let o = run_one(id, opts);
            if self.format == Format::Table {
                // progress goes out as it happens when printing to a terminal
                let line = format!("{o}\n");
                if self.out.is_none() {
                    print!("{line}");
                } else {
                    text.push_str(&line);
                }
            }
            outcomes.push(o);
        }
        let passed = outcomes.iter().filter(|o| o.passed).count();
        let all = passed == outcomes.len();
        match self.format {
            Format::Json => text = render::json(json!({ "passed": all, "checks": outcomes })),
            Format::Csv => {
                text = String::from("id,passed,title,detail\n");
                for o in &outcomes {
                    let _ = writeln!(
                        text,
                        "{},{},\"{}\",\"{}\"",
                        o.id,
                        o.passed,
                        o.title,
                        o.detail.replace('"', "'")
                    );
                }
            }
            Format::Table => {
                let _ = writeln!(text, "{passed} of {} checks pass", outcomes.len());
            }
        }
        Ok(Report {
            text,
            code: if all { 0 } else { EXIT_ASSERTION },
        })
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    let r = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::File::open(path)
            .and_then(|mut f| f.read_to_string(&mut text))
            .map(|_| ())
    };
    r.map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))?;
    Ok(text)
}

/// Reads a survey result or a bare pair set.
fn load_pairs(path: &Path) -> Result<PairSet, Failure> {
    let text = read_input(path)?;
    if let Ok(r) = serde_json::from_str::<SurveyResult>(&text) {
        return Ok(r.realized);
    }
    serde_json::from_str::<PairSet>(&text).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}
