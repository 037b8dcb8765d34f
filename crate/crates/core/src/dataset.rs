//! Dataset serialization and statistics.
//!
//! Expressions are written in prefix notation with one token per node;
//! integers are single decimal tokens and rationals appear as `div(p, q)`.
//! The length of an expression is its token count.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::io::{BufRead, Write};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::IntegrablePair;
use crate::tower::Expr;

pub const CONST_TOKEN: &str = "CONST";

/// Pre-order token sequence.
pub type PrefixTokens = Vec<String>;

pub fn to_prefix(e: &Expr) -> PrefixTokens {
    let mut out = Vec::with_capacity(e.size());
    push_tokens(e, &mut out);
    out
}

fn push_tokens(e: &Expr, out: &mut Vec<String>) {
    let op = |name: &str, args: &[&Expr], out: &mut Vec<String>| {
        out.push(name.to_string());
        for a in args {
            push_tokens(a, out);
        }
    };
    match e {
        Expr::X => out.push("x".into()),
        Expr::Int(n) => out.push(n.to_string()),
        Expr::Const => out.push(CONST_TOKEN.into()),
        Expr::Neg(a) => op("neg", &[a], out),
        Expr::Ln(a) => op("ln", &[a], out),
        Expr::Exp(a) => op("exp", &[a], out),
        Expr::Arctan(a) => op("arctan", &[a], out),
        Expr::Add(a, b) => op("add", &[a, b], out),
        Expr::Sub(a, b) => op("sub", &[a, b], out),
        Expr::Mul(a, b) => op("mul", &[a, b], out),
        Expr::Div(a, b) => op("div", &[a, b], out),
        Expr::Pow(a, k) => {
            op("pow", &[a], out);
            out.push(k.to_string());
        }
    }
}

/// Inverse of [`to_prefix`]; the whole stream must be consumed.
pub fn from_prefix<S: AsRef<str>>(tokens: &[S]) -> Result<Expr> {
    let mut pos = 0;
    let e = parse_at(tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(Error::Parse { pos, msg: format!("{} trailing tokens", tokens.len() - pos) });
    }
    Ok(e)
}

fn parse_at<S: AsRef<str>>(tokens: &[S], pos: &mut usize) -> Result<Expr> {
    let at = *pos;
    let tok = tokens
        .get(at)
        .ok_or_else(|| Error::Parse { pos: at, msg: "missing operand".into() })?
        .as_ref();
    *pos += 1;
    let next = |pos: &mut usize| parse_at(tokens, pos).map(Box::new);
    Ok(match tok {
        "x" => Expr::X,
        CONST_TOKEN => Expr::Const,
        "neg" => Expr::Neg(next(pos)?),
        "ln" => Expr::Ln(next(pos)?),
        "exp" => Expr::Exp(next(pos)?),
        "arctan" => Expr::Arctan(next(pos)?),
        "add" => Expr::Add(next(pos)?, next(pos)?),
        "sub" => Expr::Sub(next(pos)?, next(pos)?),
        "mul" => Expr::Mul(next(pos)?, next(pos)?),
        "div" => Expr::Div(next(pos)?, next(pos)?),
        "pow" => {
            let base = next(pos)?;
            let kpos = *pos;
            let k = tokens
                .get(kpos)
                .ok_or_else(|| Error::Parse { pos: kpos, msg: "missing exponent".into() })?
                .as_ref()
                .parse::<i64>()
                .map_err(|_| Error::Parse { pos: kpos, msg: "exponent is not an integer".into() })?;
            *pos += 1;
            Expr::Pow(base, k)
        }
        t => Expr::Int(
            t.parse::<BigInt>()
                .map_err(|_| Error::Parse { pos: at, msg: format!("unknown token {t:?}") })?,
        ),
    })
}

/// Replaces numeric coefficients by `CONST`. Signs and quotients of
/// constants fold into a single `CONST`; exponents are kept.
pub fn const_canonicalize(e: &Expr) -> Expr {
    let un = |a: &Expr, f: fn(Box<Expr>) -> Expr| f(Box::new(const_canonicalize(a)));
    let bin = |a: &Expr, b: &Expr, f: fn(Box<Expr>, Box<Expr>) -> Expr| {
        f(Box::new(const_canonicalize(a)), Box::new(const_canonicalize(b)))
    };
    match e {
        Expr::X => Expr::X,
        Expr::Int(_) | Expr::Const => Expr::Const,
        Expr::Neg(a) => match const_canonicalize(a) {
            Expr::Const => Expr::Const,
            c => Expr::Neg(Box::new(c)),
        },
        Expr::Ln(a) => un(a, Expr::Ln),
        Expr::Exp(a) => un(a, Expr::Exp),
        Expr::Arctan(a) => un(a, Expr::Arctan),
        Expr::Add(a, b) => bin(a, b, Expr::Add),
        Expr::Sub(a, b) => bin(a, b, Expr::Sub),
        Expr::Mul(a, b) => bin(a, b, Expr::Mul),
        Expr::Div(a, b) => match (const_canonicalize(a), const_canonicalize(b)) {
            (Expr::Const, Expr::Const) => Expr::Const,
            (a, b) => Expr::Div(Box::new(a), Box::new(b)),
        },
        Expr::Pow(a, k) => Expr::Pow(Box::new(const_canonicalize(a)), *k),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DatasetStats {
    pub count: usize,
    /// Token length to number of pairs.
    pub integrand_length: BTreeMap<usize, usize>,
    pub integral_length: BTreeMap<usize, usize>,
    pub close_fraction: f64,
    pub unique_mod_const_fraction: f64,
    pub closeness_threshold: usize,
}

/// Length histograms, the share of pairs whose lengths differ by less
/// than `closeness_threshold`, and the share of integrands that stay
/// distinct after [`const_canonicalize`].
pub fn dataset_stats(pairs: &[(Expr, Expr)], closeness_threshold: usize) -> Result<DatasetStats> {
    if pairs.is_empty() {
        return Err(Error::InvalidConfig("statistics of an empty dataset".into()));
    }
    let mut integrand_length = BTreeMap::new();
    let mut integral_length = BTreeMap::new();
    let mut close = 0usize;
    let mut distinct = HashSet::new();
    for (f, g) in pairs {
        let (lf, lg) = (f.size(), g.size());
        *integrand_length.entry(lf).or_insert(0) += 1;
        *integral_length.entry(lg).or_insert(0) += 1;
        if lf.abs_diff(lg) < closeness_threshold {
            close += 1;
        }
        distinct.insert(to_prefix(&const_canonicalize(f)));
    }
    let n = pairs.len() as f64;
    Ok(DatasetStats {
        count: pairs.len(),
        integrand_length,
        integral_length,
        close_fraction: close as f64 / n,
        unique_mod_const_fraction: distinct.len() as f64 / n,
        closeness_threshold,
    })
}

impl DatasetStats {
    pub fn to_text(&self) -> String {
        let mean = |h: &BTreeMap<usize, usize>| {
            h.iter().map(|(l, c)| l * c).sum::<usize>() as f64 / self.count as f64
        };
        let max = |h: &BTreeMap<usize, usize>| h.keys().next_back().copied().unwrap_or(0);
        let rows = [
            ("count", self.count.to_string()),
            ("closeness_threshold", self.closeness_threshold.to_string()),
            ("close_fraction", format!("{:.4}", self.close_fraction)),
            ("unique_mod_const_fraction", format!("{:.4}", self.unique_mod_const_fraction)),
            ("integrand_length_mean", format!("{:.2}", mean(&self.integrand_length))),
            ("integrand_length_max", max(&self.integrand_length).to_string()),
            ("integral_length_mean", format!("{:.2}", mean(&self.integral_length))),
            ("integral_length_max", max(&self.integral_length).to_string()),
        ];
        let mut s = String::new();
        for (k, v) in rows {
            let _ = writeln!(s, "{k:<28}{v:>12}");
        }
        s
    }

    /// Histogram rows `length,integrand_count,integral_count`.
    pub fn to_csv(&self) -> String {
        let mut lengths: Vec<usize> =
            self.integrand_length.keys().chain(self.integral_length.keys()).copied().collect();
        lengths.sort_unstable();
        lengths.dedup();
        let mut s = String::from("length,integrand_count,integral_count\n");
        for l in lengths {
            let get = |h: &BTreeMap<usize, usize>| h.get(&l).copied().unwrap_or(0);
            let _ = writeln!(s, "{l},{},{}", get(&self.integrand_length), get(&self.integral_length));
        }
        s
    }
}

/// One JSON Lines record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub id: u64,
    pub method: String,
    pub tower: String,
    pub seed: u64,
    pub integrand_infix: String,
    pub integral_infix: String,
    pub integrand_prefix: Vec<String>,
    pub integral_prefix: Vec<String>,
    pub verified: bool,
}

impl Record {
    pub fn from_pair(id: u64, p: &IntegrablePair) -> Self {
        Record {
            id,
            method: p.method.tag().to_string(),
            tower: p.tower.describe(),
            seed: p.seed,
            integrand_infix: p.integrand.to_infix(),
            integral_infix: p.integral.to_infix(),
            integrand_prefix: to_prefix(&p.integrand),
            integral_prefix: to_prefix(&p.integral),
            verified: p.verified,
        }
    }

    /// The pair decoded from the prefix fields.
    pub fn exprs(&self) -> Result<(Expr, Expr)> {
        Ok((from_prefix(&self.integrand_prefix)?, from_prefix(&self.integral_prefix)?))
    }
}

pub fn write_jsonl<W: Write>(out: &mut W, records: &[Record]) -> std::io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut *out, r)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Reads one record per nonempty line; malformed lines are kept as errors
/// so that callers can count them.
pub fn read_jsonl<R: BufRead>(input: R) -> std::io::Result<Vec<std::result::Result<Record, String>>> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| format!("line {}: {e}", i + 1)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn prefix_examples() {
        let x1 = Expr::add(Expr::X, Expr::int(1));
        assert_eq!(to_prefix(&x1), toks("add x 1"));
        assert_eq!(from_prefix(&toks("add x 1")).unwrap(), x1);
        assert_eq!(to_prefix(&Expr::neg(Expr::int(5))), toks("neg 5"));
        // 3x^2 + ln(2x) - 1
        let e = Expr::sub(
            Expr::add(
                Expr::mul(Expr::int(3), Expr::pow(Expr::X, 2)),
                Expr::ln(Expr::mul(Expr::int(2), Expr::X)),
            ),
            Expr::int(1),
        );
        assert_eq!(to_prefix(&e), toks("sub add mul 3 pow x 2 ln mul 2 x 1"));
    }

    #[test]
    fn truncated_and_overlong_streams() {
        match from_prefix(&toks("add x")) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(from_prefix(&toks("x 1")), Err(Error::Parse { pos: 1, .. })));
        assert!(from_prefix(&toks("pow x y")).is_err());
        assert!(from_prefix(&toks("sin x")).is_err());
    }

    #[test]
    fn canonicalization() {
        let c = |s: &str| to_prefix(&const_canonicalize(&from_prefix(&toks(s)).unwrap()));
        assert_eq!(c("mul 2 x"), toks("mul CONST x"));
        // -5 + 4x - 6/x
        assert_eq!(
            c("sub add neg 5 mul 4 x div 6 x"),
            toks("sub add CONST mul CONST x div CONST x")
        );
        assert_eq!(c("ln x"), toks("ln x"));
        assert_eq!(c("mul div 1 2 pow x 3"), toks("mul CONST pow x 3"));
    }

    #[test]
    fn stats_examples() {
        let len = |n: usize| {
            // a sum chain of n tokens, n odd
            let mut e = Expr::X;
            for _ in 0..(n - 1) / 2 {
                e = Expr::add(e, Expr::X);
            }
            e
        };
        let s = dataset_stats(&[(len(5), len(13))], 10).unwrap();
        assert_eq!(s.close_fraction, 1.0);
        let s = dataset_stats(&[(len(5), len(21))], 10).unwrap();
        assert_eq!(s.close_fraction, 0.0);
        let a = Expr::mul(Expr::int(2), Expr::X);
        let b = Expr::mul(Expr::int(7), Expr::X);
        let s = dataset_stats(&[(a.clone(), a), (b.clone(), b)], 10).unwrap();
        assert_eq!(s.unique_mod_const_fraction, 0.5);
        assert_eq!(s.integrand_length.values().sum::<usize>(), 2);
        assert!(dataset_stats(&[], 10).is_err());
    }

    #[test]
    fn jsonl_skips_blank_lines_and_keeps_bad_ones() {
        let text = "\n{\"id\":0}\nnot json\n";
        let recs = read_jsonl(text.as_bytes()).unwrap();
        assert_eq!(recs.len(), 2);
        assert!(recs.iter().all(|r| r.is_err()));
    }
}
