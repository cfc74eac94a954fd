use std::io::Write;
use std::path::Path;

use shiftdtw::bench::{run_bench, BenchConfig};
use shiftdtw::eval::clustering_accuracy;
use shiftdtw::io::{
    load_csv_series, load_ucr_tsv, parse_csv_series, AssignmentRow, BenchReport, ClusterReport,
    CsvOptions, DistanceReport, OutputFormat, Payload, ResultDocument,
};
use shiftdtw::{kmeans, shift_dtw_diagnostic, Dataset, KMeansConfig, MeasureKind, MeasureSpec};

use crate::args::{
    BenchArgs, Cli, ClusterArgs, Command, DistArgs, FormatArg, InputArgs, MeasureArg,
    MeasureArgs, OutputArgs,
};

pub enum Failure {
    /// Bad flags or flag combinations.
    Usage(String),
    /// Anything that went wrong with the data or the filesystem.
    Data(shiftdtw::Error),
}

impl From<shiftdtw::Error> for Failure {
    fn from(err: shiftdtw::Error) -> Self {
        Self::Data(err)
    }
}

type Outcome<T = ()> = Result<T, Failure>;

pub fn run(cli: &Cli) -> Outcome {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
        .map_err(|e| Failure::Usage(format!("--threads: {e}")))?;
    pool.install(|| match &cli.command {
        Command::Dist(args) => cmd_dist(args),
        Command::Cluster(args) => cmd_cluster(args),
        Command::Bench(args) => cmd_bench(args),
    })
}

fn measure_spec(args: &MeasureArgs) -> Outcome<MeasureSpec> {
    let kind = match args.measure {
        MeasureArg::Euclidean => MeasureKind::Euclidean,
        MeasureArg::Dtw => MeasureKind::Dtw,
        MeasureArg::DtwBanded => MeasureKind::DtwBanded,
        MeasureArg::ShiftDtw => MeasureKind::ShiftDtw,
    };
    match (kind.needs_radius(), args.radius) {
        (true, None) => Err(Failure::Usage(format!(
            "--measure {kind} requires -r/--radius"
        ))),
        (false, Some(_)) => Err(Failure::Usage(format!(
            "-r/--radius is not used by --measure {kind}"
        ))),
        _ => MeasureSpec::new(kind, args.radius).map_err(Failure::Data),
    }
}

fn csv_options(input: &InputArgs) -> CsvOptions {
    CsvOptions {
        header: input.header,
        id_column: input.id_column,
    }
}

fn is_tsv(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("tsv"))
}

fn load_dataset(path: &Path, input: &InputArgs) -> Outcome<Dataset> {
    let data = if is_tsv(path) {
        load_ucr_tsv(path)?
    } else {
        load_csv_series(path, csv_options(input))?
    };
    Ok(if input.znorm { data.znormalized() } else { data })
}

/// A file path when one exists, otherwise inline comma-separated values.
fn load_one(arg: &str, input: &InputArgs) -> Outcome<shiftdtw::TimeSeries> {
    let path = Path::new(arg);
    let data = if path.is_file() {
        load_dataset(path, input)?
    } else {
        let data = parse_csv_series(arg.as_bytes(), Path::new("<inline>"), CsvOptions::default())
            .map_err(|_| shiftdtw::Error::Io {
                path: path.to_owned(),
                source: std::io::Error::new(
                    std::io::ErrorKind::NotFound,
                    "no such file, and not an inline list of numbers",
                ),
            })?;
        if input.znorm {
            data.znormalized()
        } else {
            data
        }
    };
    Ok(data.series()[0].clone())
}

fn emit(doc: &ResultDocument, output: &OutputArgs, default: OutputFormat) -> Outcome {
    let format = match output.format {
        Some(FormatArg::Json) => OutputFormat::Json,
        Some(FormatArg::Csv) => OutputFormat::Csv,
        None => default,
    };
    match &output.out {
        Some(path) => shiftdtw::io::write_result(doc, path, format)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(doc.render(format).as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|source| {
                    Failure::Data(shiftdtw::Error::Io {
                        path: "<stdout>".into(),
                        source,
                    })
                })?;
        }
    }
    Ok(())
}

fn cmd_dist(args: &DistArgs) -> Outcome {
    let measure = measure_spec(&args.measure)?;
    if args.per_offset && measure.kind() != MeasureKind::ShiftDtw {
        return Err(Failure::Usage(
            "--per-offset is only meaningful with --measure shiftdtw".into(),
        ));
    }
    let a = load_one(&args.a, &args.input)?;
    let b = load_one(&args.b, &args.input)?;
    measure.check_length(a.len())?;

    let (distance, shift, visited_cells, per_offset) = if args.per_offset {
        let res = shift_dtw_diagnostic(&a, &b, measure.radius().unwrap_or_default())?;
        (res.distance, res.shift, res.visited_cells, res.per_offset_distances)
    } else {
        let cmp = measure.compare(&a, &b)?;
        (cmp.distance, cmp.shift, cmp.visited_cells, None)
    };
    let doc = ResultDocument::new(Payload::Dist(DistanceReport {
        measure,
        series_a: args.a.clone(),
        series_b: args.b.clone(),
        distance,
        shift,
        visited_cells,
        per_offset,
    }));
    emit(&doc, &args.output, OutputFormat::Json)
}

fn cmd_cluster(args: &ClusterArgs) -> Outcome {
    let measure = measure_spec(&args.measure)?;
    if args.k == 0 {
        return Err(Failure::Usage("--k must be at least 1".into()));
    }
    if args.n_init == 0 {
        return Err(Failure::Usage("--n-init must be at least 1".into()));
    }
    let data = load_dataset(&args.dataset, &args.input)?;
    let labels = if args.labels {
        Some(data.labels().ok_or_else(|| {
            Failure::Data(shiftdtw::Error::Domain(format!(
                "{}: --labels requested but the dataset has no labels",
                args.dataset.display()
            )))
        })?)
    } else {
        None
    };

    let config = KMeansConfig::new(args.k, measure)
        .with_n_init(args.n_init)
        .with_max_iter(args.max_iter)
        .with_seed(args.seed);
    let result = kmeans(&data, &config)?;
    eprintln!(
        "restart {} of {}: inertia {}, {} iterations",
        result.restart + 1,
        config.n_init,
        result.inertia,
        result.iterations_run
    );
    let accuracy = match labels {
        Some(labels) => {
            let acc = clustering_accuracy(&result.assignments, &labels, args.k)?;
            if acc.approximate {
                eprintln!("accuracy uses greedy label matching (k > 8)");
            }
            Some(acc.value)
        }
        None => None,
    };

    let assignments = result
        .assignments
        .iter()
        .zip(&result.shifts)
        .enumerate()
        .map(|(idx, (&cluster, &shift))| AssignmentRow {
            id: data.series_id(idx),
            cluster,
            shift,
        })
        .collect();
    let doc = ResultDocument::new(Payload::Cluster(ClusterReport {
        config,
        inertia: result.inertia,
        iterations_run: result.iterations_run,
        accuracy,
        assignments,
        barycenters: result
            .barycenters
            .iter()
            .map(|b| b.values().to_vec())
            .collect(),
    }));
    emit(&doc, &args.output, OutputFormat::Json)
}

fn cmd_bench(args: &BenchArgs) -> Outcome {
    if args.lengths.is_empty() || args.radii.is_empty() {
        return Err(Failure::Usage("--lengths and --radii must not be empty".into()));
    }
    if args.reps == 0 {
        return Err(Failure::Usage("--reps must be at least 1".into()));
    }
    if args.lengths.contains(&0) {
        return Err(Failure::Usage("--lengths entries must be at least 1".into()));
    }
    let rows = run_bench(&BenchConfig {
        lengths: args.lengths.clone(),
        radii: args.radii.clone(),
        repetitions: args.reps,
        seed: args.seed,
        timing: !args.no_timing,
    })?;
    let doc = ResultDocument::new(Payload::Bench(BenchReport { rows }));
    emit(&doc, &args.output, OutputFormat::Csv)
}
