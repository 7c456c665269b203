//! Command-line front end: argument parsing, input loading and dispatch to
//! the verifiers. [`run`] is the whole program minus process exit, so it
//! can be tested in-process.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use logtensor::error::{Error, Result};
use logtensor::fixtures::{bundled_table, Fixture, FixtureSpec, MAX_CUTOFF};
use logtensor::fusion::{assoc_multiplicity_check, bilinearity_report, fuse, triple_decompose, unit_law_report, FusionTable, ModuleVector, Side};
use logtensor::graded::VertexAlgebra;
use logtensor::intertwining::*;
use logtensor::io::{export_operator, load_operator};
use logtensor::report::{envelope, VerificationReport, SCHEMA};
use logtensor::scalar::{ExactComplex, NumericComplex, Q};
use logtensor::suite;
use logtensor::symbolic::ZContext;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "logtensor", version, about = "Verify logarithmic intertwining operators and fusion rules")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// P(z)-Jacobi identity for I = I_{Y,p}
    VerifyJacobi(OpArgs),
    /// L(-1), L(0), L(1) relations in both forms plus the residue route
    VerifySl2(OpArgs),
    /// Y -> I -> Y and I -> Y -> I, exact
    Roundtrip(OpArgs),
    /// Y_{I,p'}(w, x) = Y_{I,p}(w, e^{2πi(p'-p)} x) for |p - p'| <= 3
    BranchShift(OpArgs),
    /// P(z)-Jacobi for I and Q(z^{-1})-Jacobi for its adjoint agree
    Adjoint(OpArgs),
    /// two factorizations of B_r agree
    #[command(name = "b-r")]
    BR {
        #[command(flatten)]
        op: OpArgs,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        r: i64,
    },
    /// μ^{-1} ∘ μ = id
    MuCheck(OpArgs),
    /// recover η from I(1 ⊗ w) or I(w ⊗ 1)
    UnitCheck(OpArgs),
    /// module action on tensor elements
    ElmCheck {
        #[command(flatten)]
        op: OpArgs,
        /// algebra basis vector name (all mode vectors when omitted)
        #[arg(long)]
        vector: Option<String>,
    },
    /// fuse two module vectors
    Fuse {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// unit laws, bilinearity and associativity of the multiplicities
    AssocCheck {
        #[command(flatten)]
        table: TableArgs,
    },
    /// W1 ⊠ (W2 ⊠ W3) against (W1 ⊠ W2) ⊠ W3
    Triple {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long)]
        w1: String,
        #[arg(long)]
        w2: String,
        #[arg(long)]
        w3: String,
    },
    /// bundled fixtures
    Fixtures {
        #[command(subcommand)]
        action: FixturesCommand,
    },
    /// run the full acceptance suite
    Acceptance {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Subcommand, Debug)]
pub enum FixturesCommand {
    /// write algebra, module and operator files for a fixture
    Export {
        /// `heis:λ,μ` or `jordan:r,seed`
        #[arg(long)]
        name: String,
        #[arg(long)]
        out: PathBuf,
        /// Fock level cutoff for Heisenberg fixtures
        #[arg(long, default_value_t = 6)]
        cutoff: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct OpArgs {
    /// `heis:λ,μ` or `jordan:r,seed`
    #[arg(long, conflicts_with_all = ["operator", "jordan"])]
    pub fixture: Option<String>,
    /// operator.json written by `fixtures export`
    #[arg(long, conflicts_with = "jordan")]
    pub operator: Option<PathBuf>,
    /// Jordan block size of a random logarithmic family (with --seed)
    #[arg(long)]
    pub jordan: Option<u32>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// `a/b`, `a/b,c/d` (exact) or a decimal such as `0.3,-1.7`
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub z: String,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub p: i64,
    /// `wt_lo:wt_hi:max_logpower`
    #[arg(long, env = "LOGTENSOR_WINDOW", default_value = "0:6:2", allow_hyphen_values = true)]
    pub window: String,
    #[arg(long, env = "LOGTENSOR_TOL", default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct TableArgs {
    /// bundled table name (`z1`..`z6`, `ising`, `fibonacci`) or a JSON file
    #[arg(long)]
    pub table: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// `wt_lo:wt_hi:max_logpower`.
#[derive(Clone, Debug, PartialEq)]
pub struct Window {
    pub lo: Q,
    pub hi: Q,
    pub max_logpower: u32,
}

impl std::str::FromStr for Window {
    type Err = Error;

    fn from_str(s: &str) -> Result<Window> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, k] = parts[..] else {
            return Err(Error::Parse(format!("window `{s}`: expected wt_lo:wt_hi:max_logpower")));
        };
        let (lo, hi): (Q, Q) = (lo.parse()?, hi.parse()?);
        if lo > hi {
            return Err(Error::Parse(format!("window `{s}`: wt_lo > wt_hi")));
        }
        let max_logpower = k.trim().parse().map_err(|_| Error::Parse(format!("window `{s}`: bad max_logpower")))?;
        Ok(Window { lo, hi, max_logpower })
    }
}

impl std::fmt::Display for Window {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}", self.lo, self.hi, self.max_logpower)
    }
}

/// Parses `--z`. Rationals give an exact point, decimals a numeric one.
pub fn parse_z(s: &str) -> Result<ZContext> {
    let (re, im) = s.split_once(',').unwrap_or((s, "0"));
    let decimal = |t: &str| t.contains('.') || t.contains(['e', 'E']);
    if decimal(re) || decimal(im) {
        let p = |t: &str| t.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad z `{s}`")));
        ZContext::new(NumericComplex::new(p(re)?, p(im)?))
    } else {
        ZContext::from_exact(&ExactComplex::new(re.parse()?, im.parse()?))
    }
}

/// What a command produced: exit status and the text to print.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Resource(_) | Error::LogPowerOverflow { .. } => EXIT_RESOURCE,
        Error::Parse(_) | Error::Json(_) | Error::Io(_) | Error::Fusion(_) | Error::TypeMismatch(_) | Error::Unsupported(_) | Error::ZeroPoint => EXIT_PARSE,
        _ => EXIT_FAIL,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_PASS };
            let text = e.render().to_string();
            if code == EXIT_PASS {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

pub fn run(cli: Cli) -> Outcome {
    match dispatch(cli.command) {
        Ok(o) => o,
        Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

struct Input {
    alg: Arc<VertexAlgebra>,
    op: LogIntwOp,
    ctx: ZContext,
    window: Window,
}

impl OpArgs {
    fn load(&self) -> Result<Input> {
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::Parse(format!("tolerance must be positive, got {}", self.tol)));
        }
        let window: Window = self.window.parse()?;
        let ctx = parse_z(&self.z)?;
        let (alg, op) = if let Some(path) = &self.operator {
            load_operator(path)?
        } else {
            let spec: FixtureSpec = match (&self.fixture, self.jordan) {
                (Some(f), _) => f.parse()?,
                (None, Some(r)) => FixtureSpec::Jordan { r, seed: self.seed },
                (None, None) => return Err(Error::Parse("one of --fixture, --operator or --jordan is required".into())),
            };
            let f = Fixture::load(&spec, self.cutoff(&window)?)?;
            (f.alg, f.op)
        };
        Ok(Input { alg, op, ctx, window })
    }

    /// The Fock cutoff: the window's upper weight, rounded up.
    fn cutoff(&self, w: &Window) -> Result<u32> {
        let hi = w.hi.floor();
        let hi = if hi == w.hi { hi } else { &hi + &Q::one() };
        let n = hi.to_i64().unwrap_or(i64::MAX);
        if n > MAX_CUTOFF as i64 {
            return Err(Error::Resource(format!("window upper weight {} exceeds the Fock cutoff limit {MAX_CUTOFF}", w.hi)));
        }
        Ok(n.max(2) as u32)
    }
}

impl Input {
    fn i(&self, p: i64) -> IntwMap {
        i_from_y(&self.op, &self.ctx, p)
    }

    fn jacobi(&self, tol: f64) -> JacobiConfig {
        JacobiConfig { max_input_level: Some(self.window.hi.clone()), tol, ..JacobiConfig::default() }
    }
}

fn finish(command: &str, format: Format, reports: Vec<VerificationReport>, extra: Option<(String, Value)>) -> Outcome {
    let pass = reports.iter().all(|r| r.pass);
    let stdout = match format {
        Format::Json => {
            let mut env = envelope(command, &reports);
            if let Some((text, value)) = &extra {
                env["result"] = value.clone();
                env["summary"] = json!(text);
            }
            serde_json::to_string_pretty(&env).expect("json") + "\n"
        }
        Format::Text => {
            let mut out = String::new();
            if let Some((text, _)) = &extra {
                out.push_str(text);
                out.push('\n');
            }
            for r in &reports {
                out.push_str(&r.to_string());
                out.push('\n');
            }
            out.push_str(if pass { "PASS\n" } else { "FAIL\n" });
            out
        }
    };
    Outcome { code: if pass { EXIT_PASS } else { EXIT_FAIL }, stdout, stderr: String::new() }
}

fn exact_required(mut r: VerificationReport) -> VerificationReport {
    if r.pass && !r.exact_zero {
        r.pass = false;
        r.notes.push("exact equality required".into());
    }
    r
}

fn load_table(name: &str) -> Result<FusionTable> {
    let path = std::path::Path::new(name);
    if path.is_file() {
        FusionTable::from_json(&std::fs::read_to_string(path)?)
    } else {
        bundled_table(name)
    }
}

/// `0,1,1` (multiplicities) or a single label such as `σ`.
fn parse_vector(s: &str, t: &FusionTable) -> Result<ModuleVector> {
    if let Ok(i) = t.index(s.trim()) {
        return Ok(t.irreducible(i));
    }
    s.split(',')
        .map(|x| x.trim().parse::<u64>().map_err(|_| Error::Parse(format!("module vector `{s}`: expected a label or comma-separated multiplicities"))))
        .collect()
}

fn show_vector(v: &ModuleVector, t: &FusionTable) -> String {
    let parts: Vec<String> = v
        .iter()
        .zip(&t.labels)
        .filter(|(m, _)| **m > 0)
        .map(|(m, l)| if *m == 1 { l.clone() } else { format!("{m}·{l}") })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn dispatch(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::VerifyJacobi(a) => {
            let inp = a.load()?;
            let r = verify_p_jacobi(&inp.i(a.p), &inp.alg, &inp.jacobi(a.tol))?;
            Ok(finish("verify-jacobi", a.format, vec![r], None))
        }
        Command::VerifySl2(a) => {
            let inp = a.load()?;
            let i = inp.i(a.p);
            let lvl = Some(&inp.window.hi);
            let reports = vec![
                verify_p_sl2(&i, Sl2Form::Bracket, a.tol, lvl)?,
                verify_p_sl2(&i, Sl2Form::Rearranged, a.tol, lvl)?,
                verify_p_sl2_residue(&i, a.tol, lvl)?,
            ];
            Ok(finish("verify-sl2", a.format, reports, None))
        }
        Command::Roundtrip(a) => {
            let inp = a.load()?;
            let i = inp.i(a.p);
            let k = Some(inp.window.max_logpower);
            let y2 = y_from_i(&i, a.p, k)?;
            let r1 = exact_required(y2.compare(&inp.op, "Y_{I_{Y,p},p} = Y", "roundtrip", a.tol));
            let r2 = exact_required(i_from_y(&y2, &inp.ctx, a.p).compare(&i, "I_{Y_{I,p},p} = I", "roundtrip", a.tol));
            Ok(finish("roundtrip", a.format, vec![r1, r2], None))
        }
        Command::BranchShift(a) => {
            let inp = a.load()?;
            let i = inp.i(a.p);
            let mut reports = Vec::new();
            for d in -3..=3 {
                let (lhs, rhs) = branch_shift(&i, a.p, a.p + d, Some(inp.window.max_logpower))?;
                let id = format!("Y_{{I,{}}} = Y_{{I,{}}}(e^{{2πi({d})}}x)", a.p + d, a.p);
                reports.push(exact_required(lhs.compare(&rhs, &id, "branch-shift", a.tol)));
            }
            Ok(finish("branch-shift", a.format, reports, None))
        }
        Command::Adjoint(a) => {
            let inp = a.load()?;
            let i = inp.i(a.p);
            let j = adjoint(&i, &inp.alg)?;
            let cfg = inp.jacobi(a.tol);
            let p = verify_p_jacobi(&i, &inp.alg, &cfg)?;
            let q = verify_q_jacobi(&j, &inp.alg, &cfg)?;
            let agree = if p.pass == q.pass { vec![] } else { vec![format!("P side {} but Q side {}", p.pass, q.pass)] };
            let both = VerificationReport::structural("P/Q verdicts agree under the adjoint", "adjoint", 1, agree);
            Ok(finish("adjoint", a.format, vec![p, q, both], None))
        }
        Command::BR { op: a, r } => {
            let inp = a.load()?;
            let b = b_r(&inp.op, &inp.alg, r)?;
            let mut reports = vec![b.weight_law_report()];
            for r3 in -1..=1 {
                let f = b_r_factorized(&inp.op, &inp.alg, r + 2 * r3 + 1, r3)?;
                reports.push(exact_required(f.compare(&b, &format!("B_{r} via r3 = {r3}"), "b-r", a.tol)));
            }
            Ok(finish("b-r", a.format, reports, None))
        }
        Command::MuCheck(a) => {
            let inp = a.load()?;
            let i = inp.i(a.p);
            let back = mu_inverse(&mu(&i)?)?;
            Ok(finish("mu-check", a.format, vec![back.compare(&i, "μ⁻¹ ∘ μ = id", "mu", a.tol)], None))
        }
        Command::UnitCheck(a) => {
            let inp = a.load()?;
            let i = inp.i(a.p);
            let mut reports = Vec::new();
            if Arc::ptr_eq(&inp.op.ty.w1, &inp.alg.module) {
                reports.push(unit_eta_left(&i, &inp.alg, a.tol)?.1);
            }
            if Arc::ptr_eq(&inp.op.ty.w2, &inp.alg.module) {
                reports.push(unit_eta_right(&i, &inp.alg, a.tol)?.1);
            }
            if reports.is_empty() {
                return Err(Error::Unsupported("unit-check needs the algebra in the first or second slot".into()));
            }
            Ok(finish("unit-check", a.format, reports, None))
        }
        Command::ElmCheck { op: a, vector } => {
            let inp = a.load()?;
            let mut cfg = inp.jacobi(a.tol);
            if let Some(name) = vector {
                let u = (0..inp.alg.module.dim())
                    .find(|u| inp.alg.vector_name(*u) == name)
                    .ok_or_else(|| Error::Parse(format!("no algebra vector named {name}")))?;
                cfg.vectors = Some(vec![u]);
            }
            Ok(finish("elm-check", a.format, vec![verify_elm(&inp.i(a.p), &inp.alg, &cfg)?], None))
        }
        Command::Fuse { table, a, b } => {
            let t = load_table(&table.table)?;
            let (va, vb) = (parse_vector(&a, &t)?, parse_vector(&b, &t)?);
            let out = fuse(&va, &vb, &t)?;
            let text = format!("({}) ⊠ ({}) = {}  {:?}", show_vector(&va, &t), show_vector(&vb, &t), show_vector(&out, &t), out);
            Ok(finish("fuse", table.format, vec![], Some((text, json!(out)))))
        }
        Command::AssocCheck { table } => {
            let t = load_table(&table.table)?;
            let reports = vec![unit_law_report(&t), bilinearity_report(&t), assoc_multiplicity_check(&t)];
            Ok(finish("assoc-check", table.format, reports, None))
        }
        Command::Triple { table, w1, w2, w3 } => {
            let t = load_table(&table.table)?;
            let (a, b, c) = (parse_vector(&w1, &t)?, parse_vector(&w2, &t)?, parse_vector(&w3, &t)?);
            let left = triple_decompose(&a, &b, &c, &t, Side::Left)?;
            let right = triple_decompose(&a, &b, &c, &t, Side::Right)?;
            let bad = (0..t.rank()).filter(|i| left[*i] != right[*i]).map(|i| format!("{}: {} vs {}", t.labels[i], left[i], right[i])).collect();
            let rep = VerificationReport::structural("W1 ⊠ (W2 ⊠ W3) = (W1 ⊠ W2) ⊠ W3", "fusion-triple", t.rank(), bad);
            let text = format!("W1 ⊠ (W2 ⊠ W3) = {}\n(W1 ⊠ W2) ⊠ W3 = {}", show_vector(&left, &t), show_vector(&right, &t));
            Ok(finish("triple", table.format, vec![rep], Some((text, json!({"left": left, "right": right})))))
        }
        Command::Fixtures { action: FixturesCommand::Export { name, out, cutoff } } => {
            let f = Fixture::load(&name.parse()?, cutoff)?;
            let files = export_operator(&f.alg, &f.op, &out)?;
            let stdout = files.iter().map(|p| format!("{}\n", p.display())).collect();
            Ok(Outcome { code: EXIT_PASS, stdout, stderr: String::new() })
        }
        Command::Acceptance { format } => {
            let results = suite::run_all();
            let pass = results.iter().all(|r| r.pass);
            let stdout = match format {
                Format::Text => {
                    let mut s: String = results.iter().map(|r| r.line() + "\n").collect();
                    let n = results.iter().filter(|r| r.pass).count();
                    s.push_str(&format!("{n}/{} criteria pass\n", results.len()));
                    s
                }
                Format::Json => {
                    let v = json!({
                        "schema": SCHEMA,
                        "command": "acceptance",
                        "pass": pass,
                        "criteria": results.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                    });
                    serde_json::to_string_pretty(&v).expect("json") + "\n"
                }
            };
            Ok(Outcome { code: if pass { EXIT_PASS } else { EXIT_FAIL }, stdout, stderr: String::new() })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Outcome {
        run_args(std::iter::once("logtensor").chain(args.iter().copied()))
    }

    #[test]
    fn jacobi_on_the_heisenberg_vacuum_fixture() {
        let o = run(&["verify-jacobi", "--fixture", "heis:0,0", "--z", "1", "--p", "0", "--window", "0:6:0"]);
        assert_eq!(o.code, EXIT_PASS, "{}{}", o.stdout, o.stderr);
        assert!(o.stdout.contains("p-jacobi"), "{}", o.stdout);
    }

    #[test]
    fn assoc_check_on_an_ising_file() {
        let dir = std::env::temp_dir().join(format!("logtensor-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("ising.json");
        std::fs::write(&path, bundled_table("ising").unwrap().to_json().to_string()).unwrap();
        let o = run(&["assoc-check", "--table", path.to_str().unwrap()]);
        assert_eq!(o.code, EXIT_PASS, "{}", o.stdout);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn seeded_jordan_round_trip() {
        let o = run(&["roundtrip", "--seed", "7", "--jordan", "2"]);
        assert_eq!(o.code, EXIT_PASS, "{}{}", o.stdout, o.stderr);
        assert_eq!(o.stdout.matches("[PASS]").count(), 2);
    }

    #[test]
    fn json_reports_are_deterministic() {
        let args = ["mu-check", "--jordan", "3", "--seed", "11", "--z", "2", "--format", "json"];
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout);
        let v: Value = serde_json::from_str(&a.stdout).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["pass"], true);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(&["verify-jacobi", "--fixture", "heis:1/2"]).code, EXIT_PARSE);
        assert_eq!(run(&["verify-jacobi"]).code, EXIT_PARSE);
        assert_eq!(run(&["verify-jacobi", "--fixture", "heis:0,0", "--z", "0"]).code, EXIT_PARSE);
        assert_eq!(run(&["verify-jacobi", "--fixture", "heis:0,0", "--window", "3:1:0"]).code, EXIT_PARSE);
        assert_eq!(run(&["verify-jacobi", "--fixture", "heis:0,0", "--tol", "0"]).code, EXIT_PARSE);
        assert_eq!(run(&["no-such-command"]).code, EXIT_PARSE);
        assert_eq!(run(&["verify-jacobi", "--fixture", "heis:0,0", "--window", "0:12:0"]).code, EXIT_RESOURCE);
        assert_eq!(run(&["roundtrip", "--jordan", "4", "--window", "0:6:1"]).code, EXIT_RESOURCE);
        assert_eq!(run(&["fuse", "--table", "ising", "--a", "1,0", "--b", "σ"]).code, EXIT_PARSE);
        assert_eq!(run(&["assoc-check", "--table", "nope"]).code, EXIT_PARSE);
    }

    #[test]
    fn fusing_sigma_with_itself() {
        let o = run(&["fuse", "--table", "ising", "--a", "σ", "--b", "σ", "--format", "json"]);
        assert_eq!(o.code, EXIT_PASS);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["result"], json!([1, 1, 0]));
        let o = run(&["triple", "--table", "fibonacci", "--w1", "τ", "--w2", "τ", "--w3", "τ"]);
        assert_eq!(o.code, EXIT_PASS, "{}", o.stdout);
        assert!(o.stdout.contains("= 1 + 2·τ"), "{}", o.stdout);
    }

    #[test]
    fn corrupted_table_file_fails_assoc_check() {
        let t = bundled_table("ising").unwrap();
        let (s, e) = (t.index("σ").unwrap(), t.index("ε").unwrap());
        let dir = std::env::temp_dir().join(format!("logtensor-cli-bad-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.json");
        std::fs::write(&path, t.with_entry_unchecked(e, s, s, 0).to_json().to_string()).unwrap();
        let o = run(&["assoc-check", "--table", path.to_str().unwrap()]);
        assert_eq!(o.code, EXIT_FAIL);
        assert_eq!(o.stdout.matches("offending:").count(), 4, "{}", o.stdout);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn exported_operator_drives_the_checks() {
        let dir = std::env::temp_dir().join(format!("logtensor-cli-export-{}", std::process::id()));
        let o = run(&["fixtures", "export", "--name", "heis:1/2,1/2", "--out", dir.to_str().unwrap(), "--cutoff", "4"]);
        assert_eq!(o.code, EXIT_PASS, "{}", o.stderr);
        let op = dir.join("operator.json");
        for cmd in ["verify-sl2", "adjoint", "branch-shift", "mu-check"] {
            let o = run(&[cmd, "--operator", op.to_str().unwrap(), "--window", "0:4:2", "--z", "2"]);
            assert_eq!(o.code, EXIT_PASS, "{cmd}: {}{}", o.stdout, o.stderr);
        }
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn unit_and_elm_checks() {
        let o = run(&["unit-check", "--fixture", "heis:0,1/2", "--window", "0:4:2", "--z", "3"]);
        assert_eq!(o.code, EXIT_PASS, "{}{}", o.stdout, o.stderr);
        let o = run(&["elm-check", "--fixture", "heis:0,1/2", "--window", "0:5:2", "--vector", "p1"]);
        assert_eq!(o.code, EXIT_PASS, "{}{}", o.stdout, o.stderr);
        let o = run(&["b-r", "--fixture", "heis:1/2,-1/2", "--window", "0:4:2", "--r", "-1"]);
        assert_eq!(o.code, EXIT_PASS, "{}{}", o.stdout, o.stderr);
        assert_eq!(run(&["unit-check", "--jordan", "2"]).code, EXIT_PARSE);
    }

    #[test]
    fn window_and_z_parsing() {
        assert_eq!("0:6:2".parse::<Window>().unwrap(), Window { lo: Q::zero(), hi: Q::from_int(6), max_logpower: 2 });
        assert!("0:6".parse::<Window>().is_err());
        assert!(parse_z("1/2,-3").is_ok());
        assert!(parse_z("0.3,-1.7").is_ok());
        assert!(matches!(parse_z("0"), Err(Error::ZeroPoint)));
        assert!(matches!(parse_z("x"), Err(Error::Parse(_))));
    }
}
