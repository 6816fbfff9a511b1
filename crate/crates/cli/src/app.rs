use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use arcspoke_core::diagram::reduce_diagram;
use arcspoke_core::{
    bound_report, cut_decompose, run_pipeline, CandidateOrder, NodeId, PipelineConfig, PivotChoice, PlanarDiagram,
};

use crate::error::CliError;
use crate::format::{self, DiagramFile};
use crate::{corpus, render};

#[derive(Parser, Debug)]
#[command(name = "arcspoke", version, about = "Arc presentations of spatial graphs from planar diagrams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a diagram file and check structure, sphericity and strands.
    Validate { file: PathBuf },
    /// Remove nugatory crossings and print the reduced diagram.
    Reduce {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the cut-components of the reduced diagram.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the bound report c + e + b of the reduced diagram.
    Bound {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full pipeline and write presentation, report and trace files.
    Spoke {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Pivot vertex for the component containing it.
        #[arg(long)]
        pivot: Option<String>,
        /// Also write the step trace as JSON lines.
        #[arg(long)]
        trace: bool,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Shuffle the candidate order of pulling edges with this seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Also write a rendering of the presentation.
        #[arg(long, value_enum)]
        render: Option<RenderFormat>,
    },
    /// Draw a presentation file.
    Render {
        file: PathBuf,
        #[arg(long, value_enum)]
        format: RenderFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Built-in example diagrams.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum CorpusAction {
    /// List entry names with a short description.
    List,
    /// Print one entry as a diagram file.
    Emit {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

impl RenderFormat {
    fn render(self, p: &arcspoke_core::ArcPresentation) -> Result<String, CliError> {
        match self {
            RenderFormat::Ascii => render::ascii(p),
            RenderFormat::Svg => render::svg(p),
        }
    }

    fn extension(self) -> &'static str {
        match self {
            RenderFormat::Ascii => "txt",
            RenderFormat::Svg => "svg",
        }
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    String::from_utf8(bytes).map_err(|e| CliError::Parse(format!("not UTF-8: {e}")))
}

/// Parse, build and check sphericity and strands.
pub fn load_diagram(path: &Path) -> Result<PlanarDiagram, CliError> {
    let d = format::parse_diagram(&read_text(path)?)?;
    d.check_spherical()?;
    d.trace_strands()?;
    Ok(d)
}

/// Write through a temporary file in the same directory and rename it
/// into place, so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let name = path.file_name().ok_or_else(|| CliError::Usage(format!("{}: not a file path", path.display())))?;
    let tmp = dir.join(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));
    fs::write(&tmp, contents).map_err(|e| CliError::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        CliError::io(path, e)
    })
}

fn emit(out: &mut dyn Write, target: Option<&Path>, text: &str) -> Result<(), CliError> {
    match target {
        Some(path) => write_atomic(path, text),
        None => out.write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e)),
    }
}

fn say(out: &mut dyn Write, line: &str) -> Result<(), CliError> {
    writeln!(out, "{line}").map_err(|e| CliError::io("<stdout>", e))
}

/// Prints `stage: ok (detail)` or `stage: FAIL (error)` and passes `r` on.
fn stage<T>(
    out: &mut dyn Write,
    name: &str,
    r: Result<T, CliError>,
    detail: impl Fn(&T) -> String,
) -> Result<T, CliError> {
    match &r {
        Ok(v) => say(out, &format!("{name}: ok ({})", detail(v)))?,
        Err(e) => say(out, &format!("{name}: FAIL ({e})"))?,
    }
    r
}

fn validate(path: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    let text = read_text(path)?;
    let file = stage(out, "parse", DiagramFile::parse(&text), |f| format!("name `{}`", f.name()))?;
    let d = stage(out, "structure", file.build(), |d| {
        format!("{} vertices, {} crossings, {} edges", d.vertex_count(), d.crossing_count(), d.edge_count())
    })?;
    stage(out, "sphericity", d.check_spherical().map_err(CliError::from), |()| {
        format!("{} faces, {} components", d.compute_faces().len(), d.connected_components().len())
    })?;
    stage(out, "strands", d.trace_strands().map_err(CliError::from), |s| format!("{} strands", s.len()))?;
    say(out, "valid")
}

struct Spoked {
    files: Vec<(String, String)>,
    summary: String,
}

fn spoke_one(
    path: &Path,
    stem: &str,
    config: &PipelineConfig,
    trace: bool,
    render: Option<RenderFormat>,
) -> Result<Spoked, CliError> {
    let d = load_diagram(path)?;
    let run = run_pipeline(&d, config)?;
    let mut files = vec![
        (format!("{stem}.presentation.json"), format::presentation_json(&run.presentation)),
        (format!("{stem}.report.json"), format::report_json(&run.report)),
    ];
    if trace {
        let lines: String = run.runs.iter().map(|r| format::trace_jsonl(&r.component, &r.trace)).collect();
        files.push((format!("{stem}.trace.jsonl"), lines));
    }
    if let Some(fmt) = render {
        files.push((format!("{stem}.{}", fmt.extension()), fmt.render(&run.presentation)?));
    }
    let r = &run.report;
    let summary = format!(
        "{stem}: {} pages, bound {} (c = {}, e = {}, b = {})",
        run.presentation.page_count(),
        r.bound,
        r.crossings,
        r.edges,
        r.bouquets
    );
    Ok(Spoked { files, summary })
}

fn spoke(
    paths: &[PathBuf],
    config: &PipelineConfig,
    trace: bool,
    out_dir: &Path,
    render: Option<RenderFormat>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let mut stems = Vec::with_capacity(paths.len());
    let mut seen = BTreeSet::new();
    for p in paths {
        let stem = p
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .ok_or_else(|| CliError::Usage(format!("{}: not a file path", p.display())))?;
        if !seen.insert(stem.clone()) {
            return Err(CliError::Usage(format!("two inputs share the name `{stem}`")));
        }
        stems.push(stem);
    }
    fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;

    // each file runs in its own thread; output order follows the input order
    let results: Vec<Result<Spoked, CliError>> = std::thread::scope(|s| {
        let handles: Vec<_> = paths
            .iter()
            .zip(&stems)
            .map(|(p, stem)| s.spawn(move || spoke_one(p, stem, config, trace, render)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("pipeline thread panicked")).collect()
    });

    let mut first = None;
    for (p, r) in paths.iter().zip(results) {
        let r = r.and_then(|done| {
            for (name, text) in &done.files {
                write_atomic(&out_dir.join(name), text)?;
            }
            Ok(done)
        });
        match r {
            Ok(done) => say(out, &done.summary)?,
            Err(e) => {
                let e = if paths.len() > 1 { CliError::InFile { path: p.clone(), source: Box::new(e) } } else { e };
                if first.is_none() {
                    first = Some(e);
                } else {
                    let _ = writeln!(err, "error: {e}");
                }
            }
        }
    }
    first.map_or(Ok(()), Err)
}

/// Runs one command. Results go to `out`, secondary diagnostics to `err`;
/// the returned error carries the exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Validate { file } => validate(&file, out),
        Command::Reduce { file, out: target } => {
            let d = reduce_diagram(&load_diagram(&file)?)?;
            emit(out, target.as_deref(), &format::diagram_json(&d))
        }
        Command::Decompose { file, out: target } => {
            let dec = cut_decompose(&reduce_diagram(&load_diagram(&file)?)?)?;
            emit(out, target.as_deref(), &format::decomposition_json(&dec))
        }
        Command::Bound { file, out: target } => {
            let dec = cut_decompose(&reduce_diagram(&load_diagram(&file)?)?)?;
            let report = bound_report(&dec, None).expect("no presentation to exceed the bound");
            emit(out, target.as_deref(), &format::report_json(&report))
        }
        Command::Spoke { files, pivot, trace, out: dir, seed, render } => {
            let config = PipelineConfig {
                pivot: pivot.map_or(PivotChoice::Auto, |p| PivotChoice::Fixed(NodeId::new(p))),
                order: seed.map_or(CandidateOrder::Clockwise, CandidateOrder::Seeded),
            };
            spoke(&files, &config, trace, &dir, render, out, err)
        }
        Command::Render { file, format: fmt, out: target } => {
            let p = format::parse_presentation(&read_text(&file)?)?;
            p.validate().map_err(|v| CliError::Assembly(arcspoke_core::PresentationError::Invalid(v).to_string()))?;
            emit(out, target.as_deref(), &fmt.render(&p)?)
        }
        Command::Corpus { action: CorpusAction::List } => {
            let width = corpus::names().map(str::len).max().unwrap_or(0);
            for (name, summary) in corpus::ENTRIES {
                say(out, &format!("{name:<width$}  {summary}"))?;
            }
            Ok(())
        }
        Command::Corpus { action: CorpusAction::Emit { name, out: target } } => {
            let d = corpus::get(&name).ok_or_else(|| CliError::Usage(format!("no corpus entry named `{name}`")))?;
            emit(out, target.as_deref(), &format::diagram_json(&d))
        }
    }
}
