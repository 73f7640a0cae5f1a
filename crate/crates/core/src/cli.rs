//! Command-line surface: table generation, verification suites,
//! orbit/superclass censuses, and single-element algebra.

use crate::field::{FieldCtx, Fq, Fq3};
use crate::group::{u_inv, u_mul, UElem, UElemJson};
use crate::superchar::{
    enumerate_superchars, psi_super_closed, superchar_label, superclass_label,
    table_class_order,
};
use crate::verify::{run_suite, ALL_SUITES};
use crate::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::io::{BufWriter, Read, Write};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "tri3d4",
    about = "Exact supercharacter engine for the Sylow p-subgroup of the Steinberg triality group",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// Odd prime p
    #[arg(long, default_value_t = 3)]
    p: u64,
    /// Extension degree k (q = p^k)
    #[arg(long, default_value_t = 1)]
    k: u32,
}

impl FieldArgs {
    fn ctx(&self) -> Result<FieldCtx> {
        let q = self
            .p
            .checked_pow(self.k)
            .ok_or_else(|| Error::TooLarge("q overflows".into()))?;
        if q > 7 {
            return Err(Error::TooLarge(format!(
                "q = {q} refused: exhaustive checks need q = 3, sampled runs q = 5; \
                 the engine accepts at most q = 7"
            )));
        }
        FieldCtx::new(self.p, self.k)
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
    Latex,
}

#[derive(Subcommand)]
enum Command {
    /// Write the full supercharacter table
    Table {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
        /// Output path (stdout when omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Render cells as decimal complex approximations (csv only)
        #[arg(long, default_value_t = false)]
        approx: bool,
    },
    /// Run verification suites; exits 0 iff all pass
    Verify {
        #[command(flatten)]
        field: FieldArgs,
        /// Suite name or "all"
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Sample count for the non-exhaustive checks
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        /// Write the structured report here as JSON
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Emit the orbit census
    Orbits {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Emit the superclass census
    Superclasses {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Single-element algebra on JSON from stdin
    Elem {
        #[command(flatten)]
        field: FieldArgs,
        #[command(subcommand)]
        op: ElemOp,
    },
}

#[derive(Subcommand)]
enum ElemOp {
    /// stdin: {"a": <elem>, "b": <elem>} -> product
    Mul,
    /// stdin: {"a": <elem>} -> inverse
    Inv,
    /// stdin: {"i": 2, "t": [1], "j": 5, "s": [1]} -> commutator [x_i(t), x_j(s)]
    Comm,
}

fn init_threads() {
    if let Ok(v) = std::env::var("TRI3D4_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
}

fn writer(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(std::fs::File::create(p)?)),
        None => Box::new(BufWriter::new(std::io::stdout())),
    })
}

/// Entry point; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    init_threads();
    match dispatch(cli.command) {
        Ok(code) => code,
        // a closed downstream pipe (e.g. `| head`) is not an error
        Err(Error::Io(m)) if m.contains("Broken pipe") => 0,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BadField(_) | Error::TooLarge(_) | Error::IndexOutOfRange => 2,
                _ => 1,
            }
        }
    }
}

fn dispatch(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Table {
            field,
            format,
            output,
            approx,
        } => {
            let ctx = field.ctx()?;
            let mut w = writer(&output)?;
            match format {
                TableFormat::Json => write_table_json(&ctx, &mut w)?,
                TableFormat::Csv => write_table_csv(&ctx, &mut w, approx)?,
                TableFormat::Latex => write_table_latex(&ctx, &mut w)?,
            }
            w.flush()?;
            Ok(0)
        }
        Command::Verify {
            field,
            suite,
            seed,
            budget,
            output,
        } => {
            let ctx = field.ctx()?;
            if budget == 0 {
                return Err(Error::BadField("budget must be positive".into()));
            }
            let suites: Vec<&str> = if suite == "all" {
                ALL_SUITES.to_vec()
            } else {
                if !ALL_SUITES.contains(&suite.as_str()) {
                    return Err(Error::BadField(format!(
                        "unknown suite '{suite}'; pick one of {ALL_SUITES:?} or 'all'"
                    )));
                }
                vec![suite.as_str()]
            };
            let mut reports = Vec::new();
            let mut all_passed = true;
            for name in suites {
                let report = run_suite(&ctx, name, budget, seed)?;
                println!(
                    "{:<10} {:>12} checks {:>6} failures  {}",
                    report.suite,
                    report.checks,
                    report.failures,
                    if report.passed { "PASS" } else { "FAIL" }
                );
                for note in &report.notes {
                    println!("           {note}");
                }
                all_passed &= report.passed;
                reports.push(report);
            }
            if let Some(path) = output {
                #[derive(Serialize)]
                struct VerifyOut<'a> {
                    meta: crate::field::CtxMeta,
                    seed: u64,
                    budget: u64,
                    suites: &'a [crate::verify::SuiteReport],
                    passed: bool,
                }
                let out = VerifyOut {
                    meta: ctx.meta(),
                    seed,
                    budget,
                    suites: &reports,
                    passed: all_passed,
                };
                let mut w = BufWriter::new(std::fs::File::create(path)?);
                serde_json::to_writer_pretty(&mut w, &out)
                    .map_err(|e| Error::Io(e.to_string()))?;
                w.flush()?;
            }
            Ok(if all_passed { 0 } else { 1 })
        }
        Command::Orbits { field, output } => {
            let ctx = field.ctx()?;
            #[derive(Serialize)]
            struct OrbitsOut {
                meta: crate::field::CtxMeta,
                families: Vec<crate::verify::OrbitCensus>,
                total_patterns: u64,
            }
            let out = OrbitsOut {
                meta: ctx.meta(),
                families: crate::verify::orbit_census(&ctx),
                total_patterns: crate::pattern::Pattern::space_size(&ctx),
            };
            let mut w = writer(&output)?;
            serde_json::to_writer_pretty(&mut w, &out).map_err(|e| Error::Io(e.to_string()))?;
            w.flush()?;
            Ok(0)
        }
        Command::Superclasses { field, output } => {
            let ctx = field.ctx()?;
            #[derive(Serialize)]
            struct ClassesOut {
                meta: crate::field::CtxMeta,
                count: u64,
                classes: Vec<crate::superclass::SuperclassCensusRow>,
            }
            let classes = crate::superclass::census(&ctx);
            let out = ClassesOut {
                meta: ctx.meta(),
                count: classes.len() as u64,
                classes,
            };
            let mut w = writer(&output)?;
            serde_json::to_writer_pretty(&mut w, &out).map_err(|e| Error::Io(e.to_string()))?;
            w.flush()?;
            Ok(0)
        }
        Command::Elem { field, op } => {
            let ctx = field.ctx()?;
            let mut input = String::new();
            std::io::stdin().read_to_string(&mut input)?;
            let result = elem_op(&ctx, &op, &input)?;
            println!("{}", serde_json::to_string_pretty(&result).unwrap());
            Ok(0)
        }
    }
}

#[derive(Serialize)]
struct ElemOut {
    result: UElemJson,
}

fn parse_param(ctx: &FieldCtx, v: &serde_json::Value, name: &str) -> Result<Fq3> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::BadField(format!("{name} must be a coefficient array")))?;
    let coeffs: Vec<u32> = arr
        .iter()
        .map(|x| {
            x.as_u64()
                .filter(|&c| c < ctx.q())
                .map(|c| c as u32)
                .ok_or_else(|| Error::BadField(format!("{name}: bad coefficient")))
        })
        .collect::<Result<_>>()?;
    match coeffs.len() {
        1 => Ok(ctx.embed(Fq(coeffs[0]))),
        3 => Ok(ctx.fq3_from_coeffs([Fq(coeffs[0]), Fq(coeffs[1]), Fq(coeffs[2])])),
        _ => Err(Error::BadField(format!(
            "{name} must have 1 (F_q) or 3 (F_q^3) coefficients"
        ))),
    }
}

fn elem_op(ctx: &FieldCtx, op: &ElemOp, input: &str) -> Result<ElemOut> {
    let v: serde_json::Value =
        serde_json::from_str(input).map_err(|e| Error::BadField(format!("bad JSON: {e}")))?;
    let get_elem = |key: &str| -> Result<UElem> {
        let j: UElemJson = serde_json::from_value(
            v.get(key)
                .cloned()
                .ok_or_else(|| Error::BadField(format!("missing field '{key}'")))?,
        )
        .map_err(|e| Error::BadField(format!("bad element '{key}': {e}")))?;
        UElem::from_json(ctx, &j)
    };
    let result = match op {
        ElemOp::Mul => u_mul(ctx, &get_elem("a")?, &get_elem("b")?),
        ElemOp::Inv => u_inv(ctx, &get_elem("a")?),
        ElemOp::Comm => {
            let idx = |key: &str| -> Result<usize> {
                v.get(key)
                    .and_then(|x| x.as_u64())
                    .filter(|&i| (1..=6).contains(&i))
                    .map(|i| i as usize)
                    .ok_or_else(|| Error::BadField(format!("'{key}' must be 1..=6")))
            };
            let i = idx("i")?;
            let j = idx("j")?;
            let t = parse_param(ctx, v.get("t").unwrap_or(&serde_json::Value::Null), "t")?;
            let s = parse_param(ctx, v.get("s").unwrap_or(&serde_json::Value::Null), "s")?;
            crate::group::commutator_closed(ctx, i, t, j, s)?
        }
    };
    Ok(ElemOut {
        result: result.to_json(ctx),
    })
}

// ---- table writers (streaming, deterministic) ----

fn write_table_json(ctx: &FieldCtx, w: &mut dyn Write) -> Result<()> {
    // streamed by row: the q = 5 table has ~15M cells and is written
    // without materializing all values
    let classes = table_class_order(ctx);
    let chars = enumerate_superchars(ctx);
    let meta = serde_json::to_string(&ctx.meta()).unwrap();
    write!(w, "{{\n\"meta\": {meta},\n\"superclasses\": [")?;
    for (i, c) in classes.iter().enumerate() {
        let sep = if i == 0 { "" } else { ", " };
        write!(w, "{sep}{:?}", superclass_label(ctx, c))?;
    }
    write!(w, "],\n\"class_sizes\": [")?;
    for (i, c) in classes.iter().enumerate() {
        let sep = if i == 0 { "" } else { ", " };
        write!(w, "{sep}{}", c.size(ctx))?;
    }
    write!(w, "],\n\"supercharacters\": [")?;
    for (i, c) in chars.iter().enumerate() {
        let sep = if i == 0 { "" } else { ", " };
        write!(w, "{sep}{:?}", superchar_label(ctx, c))?;
    }
    write!(w, "],\n\"values\": [")?;
    for (i, id) in chars.iter().enumerate() {
        if i > 0 {
            write!(w, ",")?;
        }
        write!(w, "\n[")?;
        for (k, class) in classes.iter().enumerate() {
            if k > 0 {
                write!(w, ", ")?;
            }
            let val = psi_super_closed(ctx, id, class);
            write!(w, "[")?;
            for (j, c) in val.coeffs().iter().enumerate() {
                if j > 0 {
                    write!(w, ",")?;
                }
                write!(w, "{c}")?;
            }
            write!(w, "]")?;
        }
        write!(w, "]")?;
    }
    writeln!(w, "\n]\n}}")?;
    Ok(())
}

fn write_table_csv(ctx: &FieldCtx, w: &mut dyn Write, approx: bool) -> Result<()> {
    let classes = table_class_order(ctx);
    let chars = enumerate_superchars(ctx);
    write!(w, "supercharacter")?;
    for c in &classes {
        write!(w, ",{}", superclass_label(ctx, c))?;
    }
    writeln!(w)?;
    write!(w, "class_size")?;
    for c in &classes {
        write!(w, ",{}", c.size(ctx))?;
    }
    writeln!(w)?;
    for id in &chars {
        write!(w, "{}", superchar_label(ctx, id))?;
        for class in &classes {
            let val = psi_super_closed(ctx, id, class);
            if approx {
                let (re, im) = val.approx();
                write!(w, ",{re:.6}{im:+.6}i")?;
            } else {
                write!(w, ",{}", val.render())?;
            }
        }
        writeln!(w)?;
    }
    Ok(())
}

fn write_table_latex(ctx: &FieldCtx, w: &mut dyn Write) -> Result<()> {
    let classes = table_class_order(ctx);
    let chars = enumerate_superchars(ctx);
    writeln!(w, "% supercharacter table, q = {}", ctx.q())?;
    writeln!(
        w,
        "\\begin{{tabular}}{{l|{}}}",
        "c".repeat(classes.len())
    )?;
    write!(w, " ")?;
    for c in &classes {
        write!(w, " & $\\mathrm{{{}}}$", superclass_label(ctx, c).replace('_', "\\_"))?;
    }
    writeln!(w, " \\\\ \\hline")?;
    for id in &chars {
        write!(w, "$\\Psi[{}]$", superchar_label(ctx, id))?;
        for class in &classes {
            let val = psi_super_closed(ctx, id, class);
            let cell = val.render().replace('z', "\\zeta").replace('*', "\\cdot ");
            write!(w, " & ${cell}$")?;
        }
        writeln!(w, " \\\\")?;
    }
    writeln!(w, "\\end{{tabular}}")?;
    Ok(())
}

/// In-memory JSON of the full table; used by tests for byte-identical
/// determinism checks.
pub fn table_json_string(ctx: &FieldCtx) -> String {
    let mut buf = Vec::new();
    write_table_json(ctx, &mut buf).unwrap();
    String::from_utf8(buf).unwrap()
}

/// Streams the full table JSON into a counting sink and returns the byte
/// count; exercises the scale path without holding the table in memory.
pub fn table_json_byte_count(ctx: &FieldCtx) -> u64 {
    struct Counter(u64);
    impl Write for Counter {
        fn write(&mut self, buf: &[u8]) -> std::io::Result<usize> {
            self.0 += buf.len() as u64;
            Ok(buf.len())
        }
        fn flush(&mut self) -> std::io::Result<()> {
            Ok(())
        }
    }
    let mut counter = Counter(0);
    write_table_json(ctx, &mut counter).unwrap();
    counter.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_table_is_deterministic_and_parses() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let s1 = table_json_string(&ctx);
        let s2 = table_json_string(&ctx);
        assert_eq!(s1, s2);
        let v: serde_json::Value = serde_json::from_str(&s1).unwrap();
        assert_eq!(v["supercharacters"].as_array().unwrap().len(), 345);
        assert_eq!(v["superclasses"].as_array().unwrap().len(), 345);
        assert_eq!(v["values"].as_array().unwrap().len(), 345);
        assert_eq!(v["values"][0].as_array().unwrap().len(), 345);
        // trivial character row: all cells equal 1 = [1, 0]
        for cell in v["values"][0].as_array().unwrap() {
            assert_eq!(cell[0].as_i64(), Some(1));
            assert_eq!(cell[1].as_i64(), Some(0));
        }
        // class sizes sum to |U|
        let total: i64 = v["class_sizes"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_i64().unwrap())
            .sum();
        assert_eq!(total, 531441);
    }

    #[test]
    fn elem_comm_example() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let out = elem_op(
            &ctx,
            &ElemOp::Comm,
            r#"{"i": 2, "t": [1], "j": 5, "s": [1]}"#,
        )
        .unwrap();
        // [x2(1), x5(1)] = x6(1)
        assert_eq!(out.result.t6, vec![1]);
        assert_eq!(out.result.t1, vec![0, 0, 0]);
        assert_eq!(out.result.t5, vec![0]);
    }

    #[test]
    fn elem_mul_and_inv_round_trip() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let a = UElem::new(Fq3(5), Fq(1), Fq3(11), Fq3(2), Fq(0), Fq(2));
        let a_json = serde_json::to_value(a.to_json(&ctx)).unwrap();
        let inv = elem_op(
            &ctx,
            &ElemOp::Inv,
            &serde_json::json!({ "a": a_json }).to_string(),
        )
        .unwrap();
        let prod = elem_op(
            &ctx,
            &ElemOp::Mul,
            &serde_json::json!({ "a": a_json, "b": serde_json::to_value(&inv.result).unwrap() })
                .to_string(),
        )
        .unwrap();
        let back = UElem::from_json(&ctx, &prod.result).unwrap();
        assert!(back.is_identity());
    }

    #[test]
    fn csv_table_has_the_right_shape() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let mut buf = Vec::new();
        write_table_csv(&ctx, &mut buf, false).unwrap();
        let s = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = s.lines().collect();
        // header + sizes + 345 rows
        assert_eq!(lines.len(), 347);
        assert_eq!(lines[0].split(',').count(), 346);
        assert!(lines[2].starts_with("Lin(a12=[0:0:0];a23=0)"));
    }

    #[test]
    fn latex_table_renders() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let mut buf = Vec::new();
        write_table_latex(&ctx, &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.starts_with("% supercharacter table"));
        assert!(s.contains("\\begin{tabular}"));
        assert!(s.contains("\\zeta"));
    }

    #[test]
    fn rejects_oversized_q() {
        let args = FieldArgs { p: 11, k: 1 };
        assert!(matches!(args.ctx(), Err(Error::TooLarge(_))));
        let args = FieldArgs { p: 3, k: 2 };
        assert!(matches!(args.ctx(), Err(Error::TooLarge(_))));
    }
}
