use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde::Serialize;

use qhforge::algebra::{element_order, inverse, is_unit, ScalarSymbols, UnitTest, DEFAULT_ORDER_CAP};
use qhforge::catalog::{build_enriched_str, build_novikov, build_str, CatalogRing};
use qhforge::group::{classify_gr_units, embed_product_qenr, GroupSearchBounds, OrderedGroup};
use qhforge::novikov::Convention;
use qhforge::parse::parse_element_with;
use qhforge::property_d::{check_property_d, vanishing_verdict};
use qhforge::report::{ring_info, table_dump, to_json};
use qhforge::seidel::{classify_top_units, finite_order_verdict, phi_sigma, SectionData};
use qhforge::verify;
use qhforge::{AlgebraElement, Error, Ring};

#[derive(Parser)]
#[command(name = "qhforge", version, about = "Exact quantum homology rings over Novikov coefficients")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Read and print Novikov exponents as `φ(e^{-A}) = q^{-c₁} t^{-ω}`.
    #[arg(long, global = true)]
    phi_faithful: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Build rings and do arithmetic in them.
    #[command(subcommand)]
    Ring(RingCmd),
    /// Top-degree units: classification and orders.
    #[command(subcommand)]
    Units(UnitsCmd),
    /// Units of integral group rings of ordered groups.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Property D.
    #[command(subcommand)]
    Propd(PropdCmd),
    /// Combined I = 0 verdict.
    Verdict(VerdictArgs),
    #[command(subcommand)]
    Seidel(SeidelCmd),
    /// Run the reproduction suite; exit 0 iff every criterion passes.
    VerifyPaper {
        /// Only these criteria, e.g. `--only 1,6`.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Args)]
struct RingArg {
    /// Ring id: `cpn:<n>`, `g24`, `prod:<id>,<id>`; suffix `@enriched`, `@universal` or `@lambda`.
    #[arg(long)]
    ring: String,
}

#[derive(Subcommand)]
enum RingCmd {
    Info {
        #[command(flatten)]
        ring: RingArg,
        /// Include the multiplication table.
        #[arg(long)]
        table: bool,
        /// Write the multiplication table as JSON to this path.
        #[arg(long, value_name = "PATH")]
        dump_table: Option<std::path::PathBuf>,
    },
    /// Product of one or more elements.
    Mul {
        #[command(flatten)]
        ring: RingArg,
        #[arg(required = true)]
        elems: Vec<String>,
    },
    Pow {
        #[command(flatten)]
        ring: RingArg,
        elem: String,
        #[arg(allow_hyphen_values = true)]
        exponent: i64,
    },
    Invert {
        #[command(flatten)]
        ring: RingArg,
        elem: String,
    },
}

#[derive(Args)]
struct BoundArg {
    /// Coefficient bound for the Diophantine search.
    #[arg(long, env = "QHFORGE_DEFAULT_BOUND", default_value_t = qhforge::seidel::DEFAULT_COEFF_BOUND)]
    bound: i64,
}

#[derive(Subcommand)]
enum UnitsCmd {
    Classify {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        bound: BoundArg,
    },
    /// Orders of the classified units, or of one element with `--elem`.
    Order {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        bound: BoundArg,
        #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
        cap: u64,
        #[arg(long)]
        elem: Option<String>,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Exhaustive unit search in a box.
    Units {
        /// The group `Q_enr` of a product of projective spaces embeds into.
        #[arg(long, conflicts_with_all = ["cpn", "weights", "rank"])]
        ring: Option<String>,
        /// `x` with weight `1/(n+1)`.
        #[arg(long, conflicts_with_all = ["weights", "rank"])]
        cpn: Option<i64>,
        /// One weight per generator, e.g. `1/2,1/3`.
        #[arg(long, value_delimiter = ',')]
        weights: Vec<String>,
        /// Lexicographic order on this many generators.
        #[arg(long, conflicts_with = "weights")]
        rank: Option<usize>,
        #[arg(long, default_value_t = 3)]
        support: usize,
        #[arg(long, default_value_t = 2)]
        coeff: i64,
        #[arg(long, default_value_t = 4)]
        exponent: i64,
    },
}

#[derive(Subcommand)]
enum PropdCmd {
    Check {
        #[command(flatten)]
        ring: RingArg,
    },
}

#[derive(Args)]
struct VerdictArgs {
    #[command(flatten)]
    ring: RingArg,
    #[command(flatten)]
    bound: BoundArg,
    #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
    cap: u64,
}

#[derive(Subcommand)]
enum SeidelCmd {
    /// Apply `Φ_σ` to an element of the enriched ring.
    PhiSigma {
        #[arg(long, default_value = "g24")]
        ring: String,
        #[arg(long, allow_hyphen_values = true)]
        c1vert: i64,
        #[arg(long, allow_hyphen_values = true)]
        coupling: String,
        #[arg(long)]
        elem: String,
    },
}

/// A failure that has already been reported, with its exit code.
struct Failure(u8);

type Outcome = Result<(), Failure>;

struct Ctx {
    format: Format,
    convention: Convention,
}

impl Ctx {
    fn emit<T: Serialize>(&self, kind: &str, body: &T, text: impl FnOnce() -> String) {
        let out = match self.format {
            Format::Json => to_json(kind, body),
            Format::Text => text(),
        };
        let mut stdout = std::io::stdout().lock();
        let _ = writeln!(stdout, "{}", out.trim_end());
    }

    /// `e_A` already names `e^{-A}`; enriched rings ignore `--phi-faithful`.
    fn enriched(&self) -> Ctx {
        Ctx { format: self.format, convention: Convention::Display }
    }

    fn fail(&self, e: &Error) -> Failure {
        let code = match e {
            Error::Parse { .. } | Error::UnknownGenerator { .. } | Error::UnknownRing(_) | Error::InvalidDimension(_) => 2,
            _ => 1,
        };
        let witness = match e {
            Error::NotAUnit { witness } => Some(witness.clone()),
            _ => None,
        };
        #[derive(Serialize)]
        struct ErrorBody<'a> {
            error: &'a str,
            message: String,
            #[serde(skip_serializing_if = "Option::is_none")]
            witness: Option<String>,
        }
        match self.format {
            Format::Json => {
                let body = ErrorBody { error: error_kind(e), message: e.to_string(), witness };
                println!("{}", to_json("error", &body));
            }
            Format::Text => eprintln!("error: {}", e),
        }
        Failure(code)
    }

    fn usage(&self, msg: String) -> Failure {
        eprintln!("error: {}", msg);
        Failure(2)
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::ZeroElement => "zero-element",
        Error::NotHomogeneous { .. } => "not-homogeneous",
        Error::UnknownGenerator { .. } => "unknown-generator",
        Error::Parse { .. } => "parse",
        Error::RingMismatch { .. } => "ring-mismatch",
        Error::NotAUnit { .. } => "not-a-unit",
        Error::NonFiniteInverse => "non-finite-inverse",
        Error::InvalidDimension(_) => "invalid-dimension",
        Error::ModeMismatch(_) => "mode-mismatch",
        Error::DegeneratePairing => "degenerate-pairing",
        Error::GroupMismatch(_) => "group-mismatch",
        Error::NotAProductOfProjectiveSpaces(_) => "not-a-product-of-projective-spaces",
        Error::NotIntegral(_) => "not-integral",
        Error::InvalidPresentation(_) => "invalid-presentation",
        Error::UnknownRing(_) => "unknown-ring",
    }
}

fn parse_ratio(s: &str) -> Option<Ratio<i64>> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: i64 = d.trim().parse().ok()?;
            (d != 0).then_some(())?;
            Some(Ratio::new(n.trim().parse().ok()?, d))
        }
        None => Some(Ratio::from_integer(s.parse().ok()?)),
    }
}

fn elem<M: ScalarSymbols>(ctx: &Ctx, ring: &Ring<M>, src: &str) -> Result<AlgebraElement<M>, Failure> {
    parse_element_with(ring, src, ctx.convention).map_err(|e| ctx.fail(&e))
}

fn show_elem<M: ScalarSymbols>(ctx: &Ctx, x: &AlgebraElement<M>) {
    ctx.emit("element", &x.to_report(ctx.convention), || x.render(ctx.convention));
}

fn novikov_ring(ctx: &Ctx, id: &str) -> Result<Ring<qhforge::NovikovMonomial>, Failure> {
    build_novikov(id).map_err(|e| ctx.fail(&e))
}

fn ring_cmd_on<M: ScalarSymbols>(ctx: &Ctx, ring: &Ring<M>, cmd: &RingCmd) -> Outcome {
    match cmd {
        RingCmd::Info { table, dump_table, .. } => {
            if let Some(path) = dump_table {
                let json = to_json("table", &table_dump(ring, ctx.convention));
                std::fs::write(path, json + "\n")
                    .map_err(|e| ctx.usage(format!("cannot write {}: {}", path.display(), e)))?;
            }
            let info = ring_info(ring, *table, ctx.convention);
            ctx.emit("ring", &info, || {
                let mut s = format!(
                    "ring {} ({} coefficients)\ncomplex dimension {}, minimal Chern number {}, kappa {}\n",
                    info.ring,
                    info.mode.as_str(),
                    info.complex_dim,
                    info.min_chern,
                    info.kappa
                );
                let gens: Vec<String> = info.generators.iter().map(|g| format!("{} (deg {})", g.name, g.degree)).collect();
                s += &format!("generators: {}\n", gens.join(", "));
                let basis: Vec<String> = info.basis.iter().map(|b| format!("{} [{}]", b.label, b.degree)).collect();
                s += &format!("basis: {}\n", basis.join(", "));
                let classes: Vec<String> =
                    info.sphere_classes.iter().map(|a| format!("{} (c1 {}, area {})", a.label, a.chern, a.energy)).collect();
                s += &format!("sphere classes: {}\n", classes.join(", "));
                for t in info.table.iter().flatten() {
                    s += &format!("{} * {} = {}\n", t.left, t.right, t.product);
                }
                s
            });
            Ok(())
        }
        RingCmd::Mul { elems, .. } => {
            let mut acc = AlgebraElement::one(ring);
            for e in elems {
                acc = &acc * &elem(ctx, ring, e)?;
            }
            show_elem(ctx, &acc);
            Ok(())
        }
        RingCmd::Pow { elem: e, exponent, .. } => {
            let x = elem(ctx, ring, e)?;
            let base = if *exponent < 0 { inverse(&x).map_err(|e| ctx.fail(&e))? } else { x };
            show_elem(ctx, &base.power(exponent.unsigned_abs()));
            Ok(())
        }
        RingCmd::Invert { elem: e, .. } => {
            let x = elem(ctx, ring, e)?;
            if let UnitTest::ZeroDivisor(w) = is_unit(&x).map_err(|e| ctx.fail(&e))? {
                return Err(ctx.fail(&Error::NotAUnit { witness: w.render(ctx.convention) }));
            }
            let inv = inverse(&x).map_err(|e| ctx.fail(&e))?;
            show_elem(ctx, &inv);
            Ok(())
        }
    }
}

fn ring_cmd(ctx: &Ctx, cmd: RingCmd) -> Outcome {
    let id = match &cmd {
        RingCmd::Info { ring, .. } | RingCmd::Mul { ring, .. } | RingCmd::Pow { ring, .. } | RingCmd::Invert { ring, .. } => {
            &ring.ring
        }
    };
    match build_str(id).map_err(|e| ctx.fail(&e))? {
        CatalogRing::Enriched(r) => ring_cmd_on(&ctx.enriched(), &r, &cmd),
        CatalogRing::Novikov(r) => ring_cmd_on(ctx, &r, &cmd),
    }
}

fn units_cmd(ctx: &Ctx, cmd: UnitsCmd) -> Outcome {
    match cmd {
        UnitsCmd::Classify { ring, bound } => {
            let r = novikov_ring(ctx, &ring.ring)?;
            let rep = classify_top_units(&r, bound.bound).summary(ctx.convention);
            ctx.emit("units", &rep, || {
                let mut s = format!(
                    "{}: {} unit classes up to sign and Novikov monomial (route {}, bound {}, {} candidates)\n",
                    rep.ring,
                    rep.classes.len(),
                    rep.route,
                    rep.bounds.coeff_bound,
                    rep.examined
                );
                for f in &rep.forms {
                    s += &format!("form: {}\n", f);
                }
                for c in &rep.classes {
                    s += &format!("unit {} with inverse {}\n", c.element.text, c.inverse.text);
                }
                s += &format!("completeness: {}\n", completeness_text(&rep.completeness));
                s
            });
            Ok(())
        }
        UnitsCmd::Order { ring, bound, cap, elem: e } => {
            let r = novikov_ring(ctx, &ring.ring)?;
            if let Some(e) = e {
                let x = elem(ctx, &r, &e)?;
                let o = element_order(&x, cap).map_err(|e| ctx.fail(&e))?.summary(ctx.convention);
                ctx.emit("order", &o, || order_line(&o));
                return Ok(());
            }
            let v = finite_order_verdict(&r, bound.bound, cap).map_err(|e| ctx.fail(&e))?.summary(ctx.convention);
            ctx.emit("orders", &v, || {
                let mut s = String::new();
                for o in &v.orders {
                    s += &order_line(o);
                    s.push('\n');
                }
                if let Some(d) = v.expected_divisor {
                    s += &format!("all orders divide {}: {}\n", d, v.all_divide);
                }
                s += &format!("all finite within cap {}: {}\n", cap, v.all_finite);
                s
            });
            Ok(())
        }
    }
}

fn order_line(o: &qhforge::algebra::OrderSummary) -> String {
    match (o.order, &o.scalar) {
        (Some(k), Some(l)) => format!("({})^{} = 1 * {}", o.subject.text, k, l),
        _ => format!("({}): no power up to {} is a multiple of 1 (inconclusive)", o.subject.text, o.search_cap),
    }
}

fn completeness_text(c: &qhforge::seidel::Completeness) -> String {
    match c {
        qhforge::seidel::Completeness::Global { reason } => format!("global ({})", reason),
        qhforge::seidel::Completeness::WithinBound { bound } => format!("complete within bound {}", bound),
    }
}

fn group_cmd(ctx: &Ctx, cmd: GroupCmd) -> Outcome {
    let GroupCmd::Units { ring, cpn, weights, rank, support, coeff, exponent } = cmd;
    let group = if let Some(id) = ring {
        let r = build_enriched_str(&id).map_err(|e| ctx.fail(&e))?;
        embed_product_qenr(&r).map_err(|e| ctx.fail(&e))?.group
    } else if let Some(n) = cpn {
        if n < 1 {
            return Err(ctx.fail(&Error::InvalidDimension(n)));
        }
        OrderedGroup::cpn(n)
    } else if !weights.is_empty() {
        let w = weights
            .iter()
            .map(|s| parse_ratio(s).ok_or_else(|| ctx.usage(format!("bad weight `{}`", s))))
            .collect::<Result<Vec<_>, _>>()?;
        let names = (1..=w.len()).map(|i| format!("x{}", i)).collect();
        OrderedGroup::new(names, vec![w]).map_err(|e| ctx.fail(&e))?
    } else {
        let r = rank.unwrap_or(1);
        if r == 0 {
            return Err(ctx.usage("rank must be positive".into()));
        }
        OrderedGroup::lex((1..=r).map(|i| format!("x{}", i)).collect())
    };
    let rep = classify_gr_units(&group, GroupSearchBounds { support, coeff, exponent }).summary();
    ctx.emit("group-units", &rep, || {
        let mut s = format!(
            "rank {}: {} candidates, {} units, only signed monomials: {}\n",
            group.rank(),
            rep.examined,
            rep.unit_count,
            rep.only_signed_monomials
        );
        for u in &rep.non_monomial {
            s += &format!("non-monomial unit {}\n", u);
        }
        s
    });
    Ok(())
}

fn propd_cmd(ctx: &Ctx, cmd: PropdCmd) -> Outcome {
    let PropdCmd::Check { ring } = cmd;
    let r = build_str(&ring.ring).map_err(|e| ctx.fail(&e))?;
    let rep = match r {
        CatalogRing::Enriched(r) => check_property_d(&r),
        CatalogRing::Novikov(r) => check_property_d(&r),
    };
    ctx.emit("property-d", &rep, || {
        format!(
            "{}: {}\nD = <{}>\nV = <{}>\n{}\nhorizon: {}\n",
            rep.ring,
            rep.status.as_str(),
            rep.divisor_basis.join(", "),
            rep.complement_basis.join(", "),
            rep.summary,
            rep.horizon
        )
    });
    Ok(())
}

fn verdict_cmd(ctx: &Ctx, args: VerdictArgs) -> Outcome {
    let r = novikov_ring(ctx, &args.ring.ring)?;
    let v = vanishing_verdict(&r, args.bound.bound, args.cap).map_err(|e| ctx.fail(&e))?;
    ctx.emit("verdict", &v, || {
        let mut s = format!("{}: {}\n", v.ring, v.verdict);
        for leg in &v.failed_legs {
            s += &format!("  {}\n", leg);
        }
        s
    });
    Ok(())
}

fn seidel_cmd(ctx: &Ctx, cmd: SeidelCmd) -> Outcome {
    let SeidelCmd::PhiSigma { ring, c1vert, coupling, elem: e } = cmd;
    let coupling = parse_ratio(&coupling).ok_or_else(|| ctx.usage(format!("bad coupling `{}`", coupling)))?;
    let r = build_enriched_str(&ring).map_err(|e| ctx.fail(&e))?;
    let x = elem(&ctx.enriched(), &r, &e)?;
    let y = phi_sigma(&x, &SectionData::new(c1vert, coupling)).map_err(|e| ctx.fail(&e))?;
    show_elem(ctx, &y);
    Ok(())
}

fn verify_cmd(ctx: &Ctx, only: Vec<u8>) -> Outcome {
    let results: Vec<_> =
        verify::criteria().iter().filter(|c| only.is_empty() || only.contains(&c.id)).map(|c| c.run()).collect();
    if results.is_empty() {
        return Err(ctx.usage(format!("no criteria match {:?}", only)));
    }
    let passed = results.iter().all(|r| r.passed);
    #[derive(Serialize)]
    struct Body<'a> {
        passed: bool,
        criteria: &'a [verify::CriterionResult],
    }
    ctx.emit("verify", &Body { passed, criteria: &results }, || {
        results.iter().map(|r| r.line()).collect::<Vec<_>>().join("\n")
    });
    if passed {
        Ok(())
    } else {
        Err(Failure(1))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        format: cli.format,
        convention: if cli.phi_faithful { Convention::PhiFaithful } else { Convention::Display },
    };
    let outcome = match cli.command {
        Command::Ring(c) => ring_cmd(&ctx, c),
        Command::Units(c) => units_cmd(&ctx, c),
        Command::Group(c) => group_cmd(&ctx, c),
        Command::Propd(c) => propd_cmd(&ctx, c),
        Command::Verdict(a) => verdict_cmd(&ctx, a),
        Command::Seidel(c) => seidel_cmd(&ctx, c),
        Command::VerifyPaper { only } => verify_cmd(&ctx, only),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code)) => ExitCode::from(code),
    }
}
