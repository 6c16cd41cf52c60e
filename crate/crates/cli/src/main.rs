use std::io::Write;
use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use foxcover::covers::{
    cover_chain_h1, enumerate_index2_reps, find_two_avoiding_index2, parse_rep, reidemeister_schreier,
    subgroup_h1_fox, subgroup_h1_rs, CoverError,
};
use foxcover::families::{
    build, one_relator_h1, scan_family, FamilyError, FamilyInstance, FamilyTag, MeskinRange, ScanRow, ScanSpec,
    DEFAULT_MAX_EXPONENT,
};
use foxcover::foxcalc::fox_derivative;
use foxcover::intlinalg::{
    abelian_group_from_presentation_matrix, smith_normal_form, AbelianGroup, IntMatrix, LinalgError,
};
use foxcover::presentation::Presentation;

/// First homology of finite covers of finitely presented groups.
#[derive(Parser, Debug)]
#[command(name = "foxcover", version)]
struct Cli {
    /// Wrap the result in {"command", "result", "warnings", "status"}.
    #[arg(long, global = true)]
    envelope: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Abelianization of a presented group and whether it is 2-avoiding.
    H1(GroupArgs),
    /// Fox derivative of one relator with respect to one generator.
    Fox {
        #[command(flatten)]
        group: GroupArgs,
        /// 1-based relator index.
        #[arg(long, default_value_t = 1)]
        relator: usize,
        /// Generator name.
        #[arg(long)]
        generator: String,
        /// Group terms sharing a prefix, e.g. `t*(1 + a + a^2)`.
        #[arg(long)]
        collected: bool,
    },
    /// Smith normal form of an integer matrix literal such as `0,0;0,0;-1,-1;-1,-1`.
    Snf {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
        /// Also print unimodular P, Q with P*A*Q = D.
        #[arg(long)]
        witnesses: bool,
    },
    /// Homology of the cover given by a permutation representation.
    Cover {
        #[command(flatten)]
        group: GroupArgs,
        /// Representation, e.g. `a:(1 2), t:id`.
        #[arg(long)]
        rep: String,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
        /// Also print the Reidemeister–Schreier presentation of the subgroup.
        #[arg(long)]
        subgroup: bool,
    },
    /// Every index-2 subgroup with its homology.
    Enumerate(GroupArgs),
    /// First index-2 subgroup whose homology is 2-avoiding.
    Avoid(GroupArgs),
    /// Sweep a family over parameter ranges.
    Scan(ScanArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Fox,
    Rs,
    Chain,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

/// A presentation given literally or as a family member.
#[derive(Args, Debug)]
struct GroupArgs {
    /// Presentation such as `< a, t | t a^2 t^-1 a^-4 >`.
    #[arg(required_unless_present = "family", conflicts_with = "family")]
    presentation: Option<String>,
    #[arg(long, value_parser = parse_family)]
    family: Option<FamilyTag>,
    #[arg(long, allow_negative_numbers = true)]
    m: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    n: Option<i64>,
    #[arg(long)]
    k: Option<i64>,
    /// Meskin exponents, e.g. `2,4,6`.
    #[arg(long, value_delimiter = ',')]
    exponents: Option<Vec<i64>>,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long, value_parser = parse_family)]
    family: FamilyTag,
    /// Value or inclusive range, e.g. `4` or `2..10`.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    m: Option<RangeInclusive<i64>>,
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    n: Option<RangeInclusive<i64>>,
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    k: Option<RangeInclusive<i64>>,
    /// One Meskin instance with these exponents.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["generators", "exponent_range"])]
    exponents: Option<Vec<i64>>,
    /// Meskin: range of generator counts.
    #[arg(long, value_parser = parse_range)]
    generators: Option<RangeInclusive<i64>>,
    /// Meskin: range each exponent runs over.
    #[arg(long, value_parser = parse_range)]
    exponent_range: Option<RangeInclusive<i64>>,
    /// Keep only members that are not 2-avoiding.
    #[arg(long)]
    non_avoidable: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_EXPONENT)]
    max_exponent: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

fn parse_family(s: &str) -> Result<FamilyTag, String> {
    s.parse()
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let num = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("`{t}` is not an integer"));
    match s.split_once("..") {
        Some((lo, hi)) => Ok(num(lo)?..=num(hi.strip_prefix('=').unwrap_or(hi))?),
        None => {
            let v = num(s)?;
            Ok(v..=v)
        }
    }
}

/// Exit status 1 for named domain errors, 2 for unparseable input.
enum Failure {
    Domain(String),
    Usage(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Usage(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Domain(m) | Failure::Usage(m) => m,
        }
    }
}

impl From<CoverError> for Failure {
    fn from(e: CoverError) -> Self {
        match e {
            CoverError::BadPermutation(_)
            | CoverError::RepSyntax(_)
            | CoverError::UnknownGenerator(_)
            | CoverError::MissingGenerator(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

impl From<FamilyError> for Failure {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::Cover(c) => c.into(),
            other => Failure::Domain(other.to_string()),
        }
    }
}

#[derive(Default)]
struct Output {
    result: Value,
    /// Preformatted text that replaces JSON on stdout (TSV tables).
    text: Option<String>,
    warnings: Vec<String>,
}

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("plain data serializes")
}

/// A JSON number when it fits in an `i64`, a decimal string otherwise.
fn integer(x: &impl ToString) -> Value {
    let text = x.to_string();
    text.parse::<i64>().map(Value::from).unwrap_or(Value::from(text))
}

fn group_json(g: &AbelianGroup) -> Value {
    let mut v = to_json(g);
    v["two_avoiding"] = json!(g.is_two_avoiding());
    v
}

fn resolve(args: &GroupArgs, warnings: &mut Vec<String>) -> Result<Presentation, Failure> {
    let p = match (&args.presentation, args.family) {
        (Some(text), _) => text.parse::<Presentation>().map_err(|e| Failure::Usage(e.to_string()))?,
        (None, Some(tag)) => {
            let need = |v: Option<i64>, flag: &str| {
                v.ok_or_else(|| Failure::Usage(format!("--family {tag} requires --{flag}")))
            };
            let f = match tag {
                FamilyTag::Bs => FamilyInstance::baumslag_solitar(need(args.m, "m")?, need(args.n, "n")?),
                FamilyTag::Bstrebel => {
                    FamilyInstance::baumslag_strebel(need(args.m, "m")?, need(args.n, "n")?, need(args.k, "k")?)
                }
                FamilyTag::Bgersten => FamilyInstance::baumslag_gersten(need(args.m, "m")?, need(args.n, "n")?),
                FamilyTag::Meskin => FamilyInstance::meskin(
                    args.exponents
                        .clone()
                        .ok_or_else(|| Failure::Usage("--family meskin requires --exponents".into()))?,
                ),
            }?;
            build(&f)?
        }
        (None, None) => return Err(Failure::Usage("expected a presentation or --family".into())),
    };
    for (j, e) in p.proper_power_relators() {
        warnings.push(format!(
            "relator {} is a proper power (exponent {e}); the group has torsion",
            j + 1
        ));
    }
    Ok(p)
}

fn abelianization(p: &Presentation) -> AbelianGroup {
    let generic = abelian_group_from_presentation_matrix(&p.abelianized_relator_matrix());
    if let Ok(g) = one_relator_h1(p) {
        debug_assert_eq!(g, generic);
    }
    generic
}

fn run(command: &Command) -> Result<Output, Failure> {
    let mut out = Output::default();
    match command {
        Command::H1(args) => {
            let p = resolve(args, &mut out.warnings)?;
            out.result = group_json(&abelianization(&p));
        }
        Command::Fox {
            group,
            relator,
            generator,
            collected,
        } => {
            let p = resolve(group, &mut out.warnings)?;
            let r = relator
                .checked_sub(1)
                .and_then(|i| p.relators().get(i))
                .ok_or_else(|| Failure::Usage(format!("relator {relator} out of range 1..={}", p.relator_count())))?;
            let g = p
                .generator_index(generator)
                .ok_or_else(|| Failure::Usage(format!("unknown generator `{generator}`")))?;
            let d = fox_derivative(r, g);
            let names = p.generator_names();
            let text = if *collected {
                d.display_collected(names).to_string()
            } else {
                d.display(names).to_string()
            };
            out.result = json!({
                "relator": p.display_word(r).to_string(),
                "generator": generator,
                "derivative": text,
                "augmentation": integer(&d.augmentation()),
            });
        }
        Command::Snf { matrix, witnesses } => {
            let a: IntMatrix = matrix.parse().map_err(|e: LinalgError| Failure::Usage(e.to_string()))?;
            let snf = smith_normal_form(&a);
            let diagonal: Vec<Value> = snf.diagonal().iter().map(integer).collect();
            out.result = json!({
                "shape": [a.rows(), a.cols()],
                "diagonal": diagonal,
                "rank": snf.rank(),
                "cokernel": group_json(&abelian_group_from_presentation_matrix(&a)),
            });
            if *witnesses {
                out.result["p"] = json!(snf.p().to_string());
                out.result["q"] = json!(snf.q().to_string());
                out.result["normal_form"] = json!(snf.normal_form().to_string());
            }
        }
        Command::Cover {
            group,
            rep,
            method,
            subgroup,
        } => {
            let p = resolve(group, &mut out.warnings)?;
            let rep = parse_rep(&p, rep)?;
            let mut result = serde_json::Map::new();
            result.insert("rep".into(), json!(rep.display(p.generator_names()).to_string()));
            result.insert("degree".into(), json!(rep.degree()));
            let mut groups = Vec::new();
            if matches!(method, Method::Fox | Method::All) {
                let g = subgroup_h1_fox(&p, &rep)?;
                result.insert("fox".into(), group_json(&g));
                groups.push(g);
            }
            if matches!(method, Method::Rs | Method::All) {
                let g = subgroup_h1_rs(&p, &rep);
                result.insert("rs".into(), group_json(&g));
                groups.push(g);
            }
            if matches!(method, Method::Chain | Method::All) {
                let g = cover_chain_h1(&p, &rep);
                result.insert("chain".into(), group_json(&g));
                groups.push(g);
            }
            let agree = groups.windows(2).all(|w| w[0] == w[1]);
            result.insert("agree".into(), json!(agree));
            if *subgroup {
                result.insert("subgroup".into(), json!(reidemeister_schreier(&p, &rep).to_string()));
            }
            if !agree {
                out.warnings.push("methods disagree".into());
            }
            out.result = Value::Object(result);
        }
        Command::Enumerate(args) => {
            let p = resolve(args, &mut out.warnings)?;
            let mut rows = Vec::new();
            for rep in enumerate_index2_reps(&p)? {
                let h = subgroup_h1_fox(&p, &rep)?;
                rows.push(json!({
                    "rep": rep.display(p.generator_names()).to_string(),
                    "h1": to_json(&h),
                    "two_avoiding": h.is_two_avoiding(),
                }));
            }
            out.result = Value::Array(rows);
        }
        Command::Avoid(args) => {
            let p = resolve(args, &mut out.warnings)?;
            out.result = match find_two_avoiding_index2(&p)? {
                Some((rep, h)) => json!({
                    "found": true,
                    "rep": rep.display(p.generator_names()).to_string(),
                    "h1": to_json(&h),
                }),
                None => json!({ "found": false }),
            };
        }
        Command::Scan(args) => {
            let rows = scan(args)?;
            for row in &rows {
                for w in &row.warnings {
                    out.warnings.push(format!("{}: {w}", row.instance));
                }
            }
            match args.format {
                Format::Json => out.result = to_json(&rows),
                Format::Tsv => {
                    let mut text = String::from(ScanRow::TSV_HEADER);
                    text.push('\n');
                    for row in &rows {
                        text.push_str(&row.to_tsv());
                        text.push('\n');
                    }
                    out.text = Some(text);
                }
            }
        }
    }
    Ok(out)
}

fn scan(args: &ScanArgs) -> Result<Vec<ScanRow>, Failure> {
    let mut spec = ScanSpec::new(args.family);
    let required = |r: &Option<RangeInclusive<i64>>, flag: &str| {
        r.clone()
            .ok_or_else(|| Failure::Usage(format!("--family {} requires --{flag}", args.family)))
    };
    match args.family {
        FamilyTag::Bs | FamilyTag::Bgersten => {
            spec.m = required(&args.m, "m")?;
            spec.n = required(&args.n, "n")?;
        }
        FamilyTag::Bstrebel => {
            spec.m = required(&args.m, "m")?;
            spec.n = required(&args.n, "n")?;
            spec.k = required(&args.k, "k")?;
        }
        FamilyTag::Meskin => {
            spec.meskin = match (&args.exponents, &args.generators, &args.exponent_range) {
                (Some(ks), _, _) => MeskinRange::Exact(ks.clone()),
                (None, Some(g), Some(e)) => MeskinRange::Tuples {
                    generators: (*g.start()).max(0) as usize..=(*g.end()).max(0) as usize,
                    exponents: e.clone(),
                },
                _ => {
                    return Err(Failure::Usage(
                        "--family meskin requires --exponents or --generators with --exponent-range".into(),
                    ))
                }
            };
        }
    }
    spec.non_avoidable_only = args.non_avoidable;
    spec.max_exponent = args.max_exponent;
    Ok(scan_family(&spec)?)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::H1(_) => "h1",
        Command::Fox { .. } => "fox",
        Command::Snf { .. } => "snf",
        Command::Cover { .. } => "cover",
        Command::Enumerate(_) => "enumerate",
        Command::Avoid(_) => "avoid",
        Command::Scan(_) => "scan",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut stdout = stdout.lock();
    let outcome = run(&cli.command);
    let (status, warnings) = match &outcome {
        Ok(out) => (0u8, out.warnings.clone()),
        Err(f) => (f.code(), Vec::new()),
    };
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    if let Err(f) = &outcome {
        eprintln!("error: {}", f.message());
    }
    let printed = if cli.envelope {
        let result = match &outcome {
            Ok(out) => match &out.text {
                Some(t) => Value::from(t.as_str()),
                None => out.result.clone(),
            },
            Err(f) => json!({ "error": f.message() }),
        };
        let envelope = json!({
            "command": command_name(&cli.command),
            "result": result,
            "warnings": warnings,
            "status": status,
        });
        writeln!(stdout, "{envelope}")
    } else {
        match &outcome {
            Ok(Output { text: Some(t), .. }) => write!(stdout, "{t}"),
            Ok(out) => writeln!(stdout, "{}", out.result),
            Err(_) => Ok(()),
        }
    };
    if printed.is_err() {
        return ExitCode::from(1);
    }
    ExitCode::from(status)
}
