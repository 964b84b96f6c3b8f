//! The `biserial` command line: argument parsing, the module-spec grammar, and
//! JSON/DOT report writing.
//!
//! Module specs:
//!
//! | spec                          | module                               |
//! |-------------------------------|--------------------------------------|
//! | `1_0`                         | simple module at vertex 0            |
//! | `str: be al- la`              | string module                        |
//! | `be al- la`                   | string module (prefix optional)      |
//! | `band:p:mu=3`                 | band module on a named word          |
//! | `band: la xi- de be al- :mu=3:m=2` | band module, multiplicity 2     |
//! | `proj:1`                      | indecomposable projective at 1       |
//! | `type0:XYX`                   | string module of `βα⁻¹XYXλ`          |
//! | `band0:XY:mu=3`               | band module on the expanded word     |

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::ar::{component_class_band, component_class_string, component_page, identify, omega_orbit};
use crate::config::Config;
use crate::deform::classify;
use crate::error::{Error, Result};
use crate::hom::{canonical_string_homs_raw, ext1_dim, hom_dim, projective_factor_subspace, stable_hom_dim};
use crate::iso::{identify_band, identify_string};
use crate::linalg::Fp;
use crate::rep::{band_rep, projective_rep, string_rep, syzygy, Rep};
use crate::type0::{
    check_plus, check_plusplus, expand, recognize_plus, recognize_plusplus, standard_string, wrap_arounds, Type0Word,
};
use crate::verify::verify_suite;
use crate::words::{enumerate_bands, enumerate_strings, is_valid_band_word, named, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "biserial", version, about = "String, band, Hom, syzygy and deformation computations")]
pub struct Cli {
    /// Prime field modulus (default 101, or 7 for `verify`).
    #[arg(long, global = true)]
    pub field: Option<u32>,
    /// `key = value` configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Directory for JSON and DOT output (falls back to BISERIAL_OUTPUT_DIR).
    #[arg(long, global = true)]
    pub output_dir: Option<PathBuf>,
    /// Print JSON only, without writing files.
    #[arg(long, global = true)]
    pub no_write: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct ModuleArg {
    /// Module spec, for example `str: be al- la` or `band:p:mu=3`.
    #[arg(long = "module", short = 'm')]
    pub spec: String,
    /// Apply the syzygy functor this many times first.
    #[arg(long, default_value_t = 0)]
    pub omega: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List string classes up to a length.
    Strings {
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// List band classes up to a length.
    Bands {
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Describe a module: dimensions, matrices, identification.
    Module(ModuleArg),
    /// Hom dimensions between two modules.
    Hom {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Also report the stable Hom dimension.
        #[arg(long)]
        stable: bool,
    },
    /// dim Ext¹(from, to).
    Ext {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// The syzygy orbit of a module.
    Syzygy {
        #[command(flatten)]
        module: ModuleArg,
        #[arg(long, default_value_t = 3)]
        steps: usize,
    },
    /// A page of the stable AR component of a string module (JSON and DOT).
    Ar {
        #[command(flatten)]
        module: ModuleArg,
        #[arg(long, default_value_t = 3)]
        radius: usize,
    },
    /// Type-0 word conditions.
    Type0 {
        #[command(subcommand)]
        op: Type0Op,
    },
    /// Full deformation classification with evidence.
    Classify {
        #[command(flatten)]
        module: ModuleArg,
        #[arg(long)]
        max_order: Option<usize>,
    },
    /// The deformation ring tag and tangent dimension.
    Defring {
        #[command(flatten)]
        module: ModuleArg,
        #[arg(long)]
        max_order: Option<usize>,
    },
    /// Run the acceptance sweeps.
    Verify {
        /// Comma-separated criterion ids; all when omitted.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Subcommand, Debug)]
pub enum Type0Op {
    /// Condition (+) on the string `βα⁻¹zλ`.
    CheckPlus { word: String },
    /// Condition (++) on the band `z`.
    CheckPlusplus { word: String },
    /// Normal-form recognition of the string and, when a band, the band.
    Recognize { word: String },
    /// Expansion into arrow letters.
    Expand { word: String },
    /// Words of a given length satisfying (+).
    List {
        #[arg(long)]
        len: usize,
    },
}

fn parse_vertex(tok: &str) -> Result<u8> {
    match tok.trim() {
        "0" => Ok(0),
        "1" => Ok(1),
        "2" => Ok(2),
        other => Err(Error::UnknownToken(other.to_string())),
    }
}

fn parse_mu(f: &Fp, tok: &str) -> Result<u32> {
    let v: i64 = tok.trim().parse().map_err(|_| Error::InvalidParameter(format!("mu={tok}")))?;
    let mu = f.elem(v);
    if mu == 0 {
        return Err(Error::InvalidParameter(format!("mu={tok} is zero mod {}", f.modulus())));
    }
    Ok(mu)
}

fn band_word(body: &str) -> Result<Word> {
    let body = body.trim();
    named::by_name(body).map_or_else(|| Word::parse(body), Ok)
}

/// Parses a module spec into a representation over `f`.
pub fn parse_module_spec(f: Fp, spec: &str) -> Result<Rep> {
    let spec = spec.trim();
    let (kind, rest) = match spec.split_once(':') {
        Some((k, r)) => (k.trim(), r),
        None => ("str", spec),
    };
    match kind {
        "str" | "string" => string_rep(f, &Word::parse(rest)?),
        "proj" => Ok(projective_rep(f, parse_vertex(rest)?)),
        "type0" => string_rep(f, &standard_string(&rest.trim().parse()?)),
        "band" | "band0" => {
            let mut parts = rest.split(':');
            let body = parts.next().unwrap_or("");
            let (mut mu, mut mult) = (None, 1usize);
            for p in parts {
                match p.trim().split_once('=') {
                    Some(("mu", v)) => mu = Some(parse_mu(&f, v)?),
                    Some(("m", v)) => {
                        mult = v.trim().parse().map_err(|_| Error::InvalidParameter(format!("m={v}")))?;
                        if mult == 0 {
                            return Err(Error::InvalidParameter("m=0".into()));
                        }
                    }
                    _ => return Err(Error::ModuleSpec(p.trim().to_string())),
                }
            }
            let mu = mu.ok_or_else(|| Error::ModuleSpec(format!("{spec}: missing mu=")))?;
            let word = if kind == "band0" { expand(&body.trim().parse()?) } else { band_word(body)? };
            band_rep(f, &word, mu, mult)
        }
        _ => Err(Error::ModuleSpec(spec.to_string())),
    }
}

fn module(f: Fp, m: &ModuleArg) -> Result<Rep> {
    let mut r = parse_module_spec(f, &m.spec)?;
    for _ in 0..m.omega {
        r = syzygy(&r);
    }
    Ok(r)
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    command: &'static str,
    field_p: u32,
    result: T,
}

struct Ctx {
    cfg: Config,
    write: bool,
}

impl Ctx {
    fn field(&self) -> Result<Fp> {
        Fp::new(self.cfg.field_p)
    }

    fn emit<T: Serialize>(&self, out: &mut dyn Write, command: &'static str, result: T) -> Result<()> {
        let env = Envelope { command, field_p: self.cfg.field_p, result };
        let text = serde_json::to_string_pretty(&env).map_err(|e| Error::Io(e.to_string()))? + "\n";
        out.write_all(text.as_bytes())?;
        self.save(&format!("{command}.json"), &text)
    }

    fn save(&self, name: &str, text: &str) -> Result<()> {
        if !self.write {
            return Ok(());
        }
        let dir: &Path = &self.cfg.output_dir;
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join(name), text)?;
        Ok(())
    }
}

fn describe(r: &Rep) -> Value {
    json!({
        "dim": r.dim(),
        "dim_vector": r.dim_vector(),
        "top": r.top(),
        "socle": r.socle(),
        "identified": identify(r),
        "matrices": r.to_json(),
    })
}

fn type0_word(s: &str) -> Result<Type0Word> {
    s.parse()
}

fn run_type0(ctx: &Ctx, out: &mut dyn Write, op: &Type0Op) -> Result<()> {
    match op {
        Type0Op::CheckPlus { word } => {
            let z = type0_word(word)?;
            ctx.emit(
                out,
                "type0",
                json!({"word": z.to_string(), "string": standard_string(&z).to_string(), "check_plus": check_plus(&z)}),
            )
        }
        Type0Op::CheckPlusplus { word } => {
            let z = type0_word(word)?;
            let pp = check_plusplus(&z)?;
            ctx.emit(out, "type0", json!({"word": z.to_string(), "band": expand(&z).to_string(), "check_plusplus": pp, "wrap_arounds": wrap_arounds(&z)}))
        }
        Type0Op::Recognize { word } => {
            let z = type0_word(word)?;
            let plus = recognize_plus(&standard_string(&z))?;
            let band = !z.is_empty() && is_valid_band_word(&expand(&z));
            let pp = if band { recognize_plusplus(&z) } else { None };
            ctx.emit(out, "type0", json!({"word": z.to_string(), "plus": plus, "is_band": band, "plusplus": pp}))
        }
        Type0Op::Expand { word } => {
            let z = type0_word(word)?;
            ctx.emit(out, "type0", json!({"word": z.to_string(), "expansion": expand(&z).to_string(), "string": standard_string(&z).to_string()}))
        }
        Type0Op::List { len } => {
            let words: Vec<String> =
                Type0Word::all_of_len(*len).into_iter().filter(check_plus).map(|z| z.to_string()).collect();
            ctx.emit(out, "type0", json!({"len": len, "plus_words": words}))
        }
    }
}

fn run_command(ctx: &Ctx, out: &mut dyn Write, cmd: &Command) -> Result<i32> {
    let f = ctx.field()?;
    let cfg = &ctx.cfg;
    match cmd {
        Command::Strings { max_len } => {
            let n = max_len.unwrap_or(cfg.max_string_len);
            let list: Vec<Value> = enumerate_strings(n)
                .iter()
                .map(|s| json!({"word": s.to_string(), "pretty": s.word().pretty(), "dim": s.len() + 1}))
                .collect();
            ctx.emit(out, "strings", json!({"max_len": n, "count": list.len(), "strings": list}))?;
        }
        Command::Bands { max_len } => {
            let n = max_len.unwrap_or(cfg.max_band_len);
            let list: Vec<Value> = enumerate_bands(n)
                .iter()
                .map(|b| json!({"word": b.to_string(), "pretty": b.word().pretty(), "len": b.len()}))
                .collect();
            ctx.emit(out, "bands", json!({"max_len": n, "count": list.len(), "bands": list}))?;
        }
        Command::Module(m) => {
            let r = module(f, m)?;
            ctx.emit(out, "module", json!({"spec": m.spec, "omega": m.omega, "module": describe(&r)}))?;
        }
        Command::Hom { from, to, stable } => {
            let (a, b) = (parse_module_spec(f, from)?, parse_module_spec(f, to)?);
            let mut res = json!({
                "from": from,
                "to": to,
                "hom": hom_dim(&a, &b),
                "projective_factoring": projective_factor_subspace(&a, &b).len(),
            });
            if *stable {
                res["stable_hom"] = json!(stable_hom_dim(&a, &b));
                if from == to {
                    res["stable_end"] = res["stable_hom"].clone();
                }
            }
            if let (Some(s), Some(t)) = (identify_string(&a), identify_string(&b)) {
                res["canonical_string_homs"] = json!(canonical_string_homs_raw(s.word(), t.word()).len());
            }
            ctx.emit(out, "hom", res)?;
        }
        Command::Ext { from, to } => {
            let (a, b) = (parse_module_spec(f, from)?, parse_module_spec(f, to)?);
            ctx.emit(out, "ext", json!({"from": from, "to": to, "ext1": ext1_dim(&a, &b)?}))?;
        }
        Command::Syzygy { module: m, steps } => {
            let r = module(f, m)?;
            let orbit: Vec<Value> = omega_orbit(&r, *steps)
                .iter()
                .enumerate()
                .map(|(k, (rep, id))| json!({"omega": m.omega + k, "dim_vector": rep.dim_vector(), "identified": id}))
                .collect();
            ctx.emit(out, "syzygy", json!({"spec": m.spec, "orbit": orbit}))?;
        }
        Command::Ar { module: m, radius } => {
            let r = module(f, m)?;
            if let Some(s) = identify_string(&r) {
                let page = component_page(&s, *radius)?;
                let class = component_class_string(f, &s)?;
                ctx.save("ar.dot", &page.to_dot())?;
                ctx.emit(out, "ar", json!({"spec": m.spec, "component": class, "page": page}))?;
            } else if let Some((b, mu)) = identify_band(&r) {
                let class = component_class_band(&b);
                ctx.emit(out, "ar", json!({"spec": m.spec, "band": b.to_string(), "mu": mu, "component": class}))?;
            } else {
                return Err(Error::Precondition("module is neither a string nor a band module".into()));
            }
        }
        Command::Type0 { op } => run_type0(ctx, out, op)?,
        Command::Classify { module: m, max_order } => {
            let r = module(f, m)?;
            let c = classify(&r, max_order.unwrap_or(cfg.max_lift_order))?;
            ctx.emit(
                out,
                "classify",
                json!({"spec": m.spec, "omega": m.omega, "identified": identify(&r), "classification": c}),
            )?;
        }
        Command::Defring { module: m, max_order } => {
            let r = module(f, m)?;
            let c = classify(&r, max_order.unwrap_or(cfg.max_lift_order))?;
            ctx.emit(out, "defring", json!({"tag": c.tag, "tangent_dim": c.tangent_dim}))?;
        }
        Command::Verify { only } => {
            let report = verify_suite(cfg, only)?;
            let failed = report.failed;
            ctx.emit(out, "verify", report)?;
            if failed > 0 {
                return Ok(EXIT_FAILED);
            }
        }
    }
    Ok(EXIT_OK)
}

fn build_config(cli: &Cli) -> Result<Config> {
    let mut cfg = match cli.command {
        Command::Verify { .. } => Config::sweep(),
        _ => Config::default(),
    };
    if let Some(path) = &cli.config {
        cfg.apply_file(path)?;
    }
    if let Some(p) = cli.field {
        cfg.field_p = p;
    }
    cfg.resolve_output_dir(cli.output_dir.clone());
    cfg.validate()?;
    Ok(cfg)
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = build_config(&cli).and_then(|cfg| run_command(&Ctx { cfg, write: !cli.no_write }, out, &cli.command));
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Io(_) | Error::OracleMismatch(_) => EXIT_FAILED,
                _ => EXIT_USAGE,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> Fp {
        Fp::new(7).unwrap()
    }

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let mut full = vec!["biserial", "--no-write"];
        full.extend_from_slice(args);
        let code = run(full, &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn module_specs() {
        let f = f7();
        assert_eq!(parse_module_spec(f, "1_0").unwrap().dim(), 1);
        assert_eq!(parse_module_spec(f, "str: be al- la").unwrap().dim(), 4);
        assert_eq!(parse_module_spec(f, "be al- la").unwrap().dim(), 4);
        assert_eq!(parse_module_spec(f, "band:p:mu=3").unwrap().dim(), 6);
        assert_eq!(parse_module_spec(f, "band: la xi- de be al- :mu=3").unwrap().dim(), 5);
        assert_eq!(parse_module_spec(f, "band:x:mu=2:m=2").unwrap().dim(), 10);
        assert_eq!(parse_module_spec(f, "proj:0").unwrap().dim(), 5);
        assert_eq!(parse_module_spec(f, "type0:-").unwrap().dim(), 4);
        assert_eq!(parse_module_spec(f, "band0:XY:mu=3").unwrap().dim(), 10);
        assert_eq!(parse_module_spec(f, "band:p:mu=-1").unwrap(), parse_module_spec(f, "band:p:mu=6").unwrap());
    }

    #[test]
    fn bad_specs_name_the_token() {
        let f = f7();
        let e = parse_module_spec(f, "str: be zz").unwrap_err();
        assert!(e.to_string().contains("zz"), "{e}");
        let e = parse_module_spec(f, "band:p:mu=7").unwrap_err();
        assert!(e.to_string().contains("mu=7"), "{e}");
        assert!(parse_module_spec(f, "band:p").is_err());
        assert!(parse_module_spec(f, "cube:1").is_err());
    }

    #[test]
    fn exit_codes() {
        let (code, out, _) = run_str(&["defring", "--module", "1_0", "--field", "7"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["tag"], "k_mod_t2");
        assert_eq!(v["result"]["tangent_dim"], 1);
        assert_eq!(run_str(&["frobnicate"]).0, EXIT_USAGE);
        let (code, _, err) = run_str(&["module", "--module", "str: be qq", "--field", "7"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("qq"));
        let (code, _, err) = run_str(&["strings", "--field", "9"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains('9'));
    }
}
