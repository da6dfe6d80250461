//! `twistalex`: twisted Alexander polynomials, cohomology and deformation
//! checks for knot group representations from the command line.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use twistalex::alexander::{duality_check, AlexanderData};
use twistalex::cohomology::build_complex;
use twistalex::deform::{classify_deformation, nonsplit_locus};
use twistalex::paperlab::{sl3_reducible_locus, trace_coordinates, trefoil_suite};
use twistalex::repspace::{build_adjoint, build_tensor_dual, irreducible, parse_representation};
use twistalex::{
    Action, CycElt, CycField, Error, LaurentPoly, Presentation, RepModule, Representation,
};

const UNITS: &str = "(up to units c*t^k)";

#[derive(Parser)]
#[command(
    name = "twistalex",
    version,
    about = "Twisted Alexander polynomials of knot group representations"
)]
struct Cli {
    /// Conductor N of the coefficient field Q(zeta_N); `z` denotes zeta_N.
    #[arg(long, global = true, default_value_t = 12)]
    field: u32,
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Delta0, the Wada quotient and Delta1 of a representation.
    Delta {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        rep: PathBuf,
        /// Twist the module by lambda^(c*phi).
        #[arg(long, requires = "twist_pow")]
        twist_lambda: Option<String>,
        #[arg(long, requires = "twist_lambda", allow_negative_numbers = true)]
        twist_pow: Option<i64>,
    },
    /// Compare the polynomials of A (x) B* with those of B (x) A* at 1/t.
    Duality {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        rep_a: PathBuf,
        #[arg(long)]
        rep_b: PathBuf,
    },
    /// Cohomology dimensions of the presentation cochain complex.
    Cohom {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        rep: PathBuf,
        /// `raw`, `ad`, or `tensor:A,B,lambda,c` with A and B representation files.
        #[arg(long, default_value = "raw")]
        module: String,
    },
    /// Deformation classification of rho_lambda = alpha (+) beta.
    Deform {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        alpha: PathBuf,
        #[arg(long)]
        beta: PathBuf,
        #[arg(long)]
        lambda: String,
    },
    /// The polynomial whose roots carry non-semisimple representations.
    Locus {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        alpha: PathBuf,
        #[arg(long)]
        beta: PathBuf,
    },
    /// Run the trefoil check battery.
    Suite,
    /// Trace coordinates of the SL3 representation rho_{s,t} of the trefoil.
    Charvar {
        #[arg(long, allow_negative_numbers = true)]
        s: String,
        #[arg(long, allow_negative_numbers = true)]
        t: String,
    },
}

/// A failure with its exit code and the name printed on stderr.
struct Failure {
    code: u8,
    name: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::HypothesisViolation(_) => 3,
            Error::DegeneratePresentation
            | Error::NonPolynomialQuotient
            | Error::DivisionByZero
            | Error::NoCocycle
            | Error::NotInvariant { .. }
            | Error::PairingMismatch(_)
            | Error::Internal(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            name: e.name().to_string(),
            message: e.to_string(),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: 1,
        name: "Io".into(),
        message: format!("{}: {e}", path.display()),
    })
}

struct Ctx {
    field: CycField,
    json: bool,
}

impl Ctx {
    fn group(&self, path: &Path) -> Result<Arc<Presentation>, Failure> {
        Ok(Arc::new(Presentation::parse(&read(path)?)?))
    }

    fn rep(&self, pres: &Arc<Presentation>, path: &Path) -> Result<Representation, Failure> {
        Ok(parse_representation(
            &read(path)?,
            pres.clone(),
            Some(&self.field),
        )?)
    }

    fn elt(&self, text: &str) -> Result<CycElt, Failure> {
        Ok(self.field.parse(text)?)
    }

    fn emit(&self, text: Vec<String>, doc: Value) -> String {
        if self.json {
            serde_json::to_string_pretty(&doc).expect("JSON value serializes") + "\n"
        } else {
            text.into_iter().map(|l| l + "\n").collect()
        }
    }
}

fn poly_json(p: &Option<LaurentPoly>) -> Value {
    p.as_ref()
        .map_or(Value::Null, |p| Value::String(p.to_string()))
}

fn delta(ctx: &Ctx, group: &Path, rep: &Path, twist: Option<(String, i64)>) -> Outcome {
    let pres = ctx.group(group)?;
    let rho = ctx.rep(&pres, rep)?;
    let mut module = rho.to_module();
    if let Some((lambda, c)) = &twist {
        module = module.twisted(&ctx.elt(lambda)?, *c)?;
    }
    let data = AlexanderData::compute(&module)?;
    let removed = &pres.gens[data.removed_generator];
    let mut text = vec![
        format!("module: {} (dim {})", module.label(), module.dim()),
        format!("Delta0 = {} {UNITS}", data.delta0),
        format!(
            "Wada = ({}) / ({}) with {removed} removed {UNITS}",
            data.wada_num, data.wada_den
        ),
    ];
    match &data.delta1 {
        Some(d1) => text.push(format!("Delta1 = {d1} {UNITS}")),
        None => text.push(format!(
            "Delta1 = unavailable ({})",
            Error::NonPolynomialQuotient.name()
        )),
    }
    let out = ctx.emit(
        text,
        json!({
            "module": module.label(),
            "delta0": data.delta0.to_string(),
            "wada_num": data.wada_num.to_string(),
            "wada_den": data.wada_den.to_string(),
            "removed_generator": removed,
            "delta1": poly_json(&data.delta1),
        }),
    );
    if data.delta1.is_none() {
        print!("{out}");
        return Err(Error::NonPolynomialQuotient.into());
    }
    Ok(out)
}

fn duality(ctx: &Ctx, group: &Path, a: &Path, b: &Path) -> Outcome {
    let pres = ctx.group(group)?;
    let (a, b) = (ctx.rep(&pres, a)?, ctx.rep(&pres, b)?);
    let r = duality_check(&a, &b)?;
    let verdict = |ok: bool| if ok { "associated" } else { "NOT associated" };
    let mut text = vec![
        format!(
            "degree 0: {} vs {} at 1/t: {}",
            r.delta0_plus,
            r.delta0_minus_inverted,
            verdict(r.degree0_pass)
        ),
        match (&r.delta1_plus, &r.delta1_minus_inverted, r.degree1_pass) {
            (Some(p), Some(m), Some(ok)) => format!("degree 1: {p} vs {m} at 1/t: {}", verdict(ok)),
            _ => "degree 1: unavailable".to_string(),
        },
    ];
    if let Some(v) = &r.hypothesis_violation {
        text.push(format!("note: {v}"));
    }
    Ok(ctx.emit(text, serde_json::to_value(&r).expect("report serializes")))
}

fn tensor_module(ctx: &Ctx, pres: &Arc<Presentation>, desc: &str) -> Result<RepModule, Failure> {
    let parts: Vec<&str> = desc.split(',').map(str::trim).collect();
    let [a, b, lambda, c] = parts.as_slice() else {
        return Err(
            Error::BadParams(format!("expected tensor:A,B,lambda,c, got tensor:{desc}")).into(),
        );
    };
    let c: i64 = c
        .parse()
        .map_err(|_| Error::BadParams(format!("bad twist power '{c}'")))?;
    let (a, b) = (ctx.rep(pres, Path::new(a))?, ctx.rep(pres, Path::new(b))?);
    Ok(build_tensor_dual(&a, &b, &ctx.elt(lambda)?, c)?)
}

fn cohom(ctx: &Ctx, group: &Path, rep: &Path, module: &str) -> Outcome {
    let pres = ctx.group(group)?;
    let m = match module {
        "raw" => ctx.rep(&pres, rep)?.to_module(),
        "ad" => build_adjoint(&ctx.rep(&pres, rep)?),
        other => match other.strip_prefix("tensor:") {
            Some(desc) => tensor_module(ctx, &pres, desc)?,
            None => return Err(Error::BadParams(format!("unknown module kind '{other}'")).into()),
        },
    };
    let d = build_complex(&m)?.dims();
    let mut text = vec![
        format!("module: {} (dim {})", m.label(), m.dim()),
        format!("h0 = {}", d.h0),
        format!("h1 = {}", d.h1),
        format!("h2 = {}", d.h2),
    ];
    if !d.aspherical {
        text.push(
            "note: presentation not known to be aspherical; h2 is that of the presentation complex"
                .into(),
        );
    }
    Ok(ctx.emit(text, serde_json::to_value(d).expect("dims serialize")))
}

fn deform(ctx: &Ctx, group: &Path, alpha: &Path, beta: &Path, lambda: &str) -> Outcome {
    let pres = ctx.group(group)?;
    let (a, b) = (ctx.rep(&pres, alpha)?, ctx.rep(&pres, beta)?);
    let r = classify_deformation(&a, &b, &ctx.elt(lambda)?)?;
    let opt = |o: &Option<String>| o.clone().unwrap_or_else(|| "unavailable".into());
    let mult =
        |m: Option<u32>| m.map_or_else(|| "unbounded or unavailable".into(), |k| k.to_string());
    let mut text = vec![
        format!("alpha: {}", r.alpha),
        format!("beta: {}", r.beta),
        format!("lambda = {}, n = {}", r.lambda, r.n),
        format!(
            "hypotheses: alpha irreducible {}, beta irreducible {}, alpha regular {}, beta regular {}",
            r.hypotheses.alpha_irreducible, r.hypotheses.beta_irreducible, r.hypotheses.alpha_regular,
            r.hypotheses.beta_regular
        ),
        format!("Delta0+ = {} {UNITS}", r.delta0_plus),
        format!("Delta1+ = {} {UNITS}", opt(&r.delta1_plus)),
        format!("Delta1- = {} {UNITS}", opt(&r.delta1_minus)),
        format!("Delta0+(lambda^n) = {}", r.delta0_plus_at),
        format!("multiplicity of lambda^n in Delta1+: {}", mult(r.delta1_plus_multiplicity)),
        format!("multiplicity of lambda^-n in Delta1-: {}", mult(r.delta1_minus_multiplicity)),
        format!("duality cross-check: {}", r.duality_cross_check),
    ];
    for (name, dims) in [("M+", &r.cohomology_plus), ("M-", &r.cohomology_minus)] {
        if let Some(d) = dims {
            text.push(format!(
                "{name}: h0 = {}, h1 = {}, h2 = {}",
                d.h0, d.h1, d.h2
            ));
        }
    }
    text.extend(r.explanation.iter().map(|e| format!("note: {e}")));
    text.push(format!("classification: {}", r.classification));
    let out = ctx.emit(text, serde_json::to_value(&r).expect("report serializes"));
    if !r.hypotheses.holds() {
        print!("{out}");
        return Err(Error::HypothesisViolation(
            "inputs are not irreducible and infinitesimally regular".into(),
        )
        .into());
    }
    Ok(out)
}

fn locus(ctx: &Ctx, group: &Path, alpha: &Path, beta: &Path) -> Outcome {
    let pres = ctx.group(group)?;
    let (a, b) = (ctx.rep(&pres, alpha)?, ctx.rep(&pres, beta)?);
    let p = nonsplit_locus(&a, &b)?;
    Ok(ctx.emit(
        vec![format!("Locus = {p} {UNITS}")],
        json!({ "locus": p.to_string() }),
    ))
}

fn suite(ctx: &Ctx) -> Outcome {
    let report = trefoil_suite(&ctx.field)?;
    let out = if ctx.json {
        report.to_json() + "\n"
    } else {
        report.to_text()
    };
    if !report.all_pass() {
        print!("{out}");
        return Err(Failure {
            code: 2,
            name: "SuiteFailure".into(),
            message: "some checks failed".into(),
        });
    }
    Ok(out)
}

fn charvar(ctx: &Ctx, s: &str, t: &str) -> Outcome {
    let (s, t) = (ctx.elt(s)?, ctx.elt(t)?);
    let c = trace_coordinates(&s, &t)?;
    let rho = twistalex::repspace::rho_st(&s, &t)?;
    let reducible = sl3_reducible_locus(&s, &t);
    let text = vec![
        format!("s = {}, t = {}", c.s, c.t),
        format!("tr rho(m) = {}", c.trace_m),
        format!("tr rho(m^-1) = {}", c.trace_m_inv),
        format!("on reducible locus: {reducible}"),
        format!("irreducible: {}", irreducible(&rho)),
    ];
    let doc = json!({
        "s": c.s.to_string(),
        "t": c.t.to_string(),
        "trace_m": c.trace_m.to_string(),
        "trace_m_inv": c.trace_m_inv.to_string(),
        "reducible_locus": reducible,
        "irreducible": irreducible(&rho),
    });
    Ok(ctx.emit(text, doc))
}

fn run(cli: Cli) -> Outcome {
    let ctx = Ctx {
        field: CycField::new(cli.field)?,
        json: cli.json,
    };
    match cli.command {
        Command::Delta {
            group,
            rep,
            twist_lambda,
            twist_pow,
        } => delta(&ctx, &group, &rep, twist_lambda.zip(twist_pow)),
        Command::Duality {
            group,
            rep_a,
            rep_b,
        } => duality(&ctx, &group, &rep_a, &rep_b),
        Command::Cohom { group, rep, module } => cohom(&ctx, &group, &rep, &module),
        Command::Deform {
            group,
            alpha,
            beta,
            lambda,
        } => deform(&ctx, &group, &alpha, &beta, &lambda),
        Command::Locus { group, alpha, beta } => locus(&ctx, &group, &alpha, &beta),
        Command::Suite => suite(&ctx),
        Command::Charvar { s, t } => charvar(&ctx, &s, &t),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("{}: {}", f.name, f.message);
            ExitCode::from(f.code)
        }
    }
}
