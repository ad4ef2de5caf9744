//! Instance and edge-list text formats.
//!
//! Instance files hold one `<R|B|P> <x> <y>` record per line; `#` starts a
//! comment. Edge lists hold one `u v` pair per line.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::{Color, EdgeSet, Instance};
use crate::scalar::Scalar;

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Parses the instance text format. Points get ids in file order.
pub fn parse_instance<T: Scalar>(text: &str) -> Result<Instance<T>> {
    let mut records = Vec::new();
    let mut lines = Vec::new();
    let mut seen: HashMap<(u64, u64), usize> = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = strip_comment(raw).trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        let bad = |msg: String| Error::Parse { line, msg };
        if fields.len() != 3 {
            return Err(bad(format!("expected `<R|B|P> <x> <y>`, got {} fields", fields.len())));
        }
        let color = Color::from_letter(fields[0]).ok_or_else(|| bad(format!("unknown color `{}`", fields[0])))?;
        let coord = |s: &str| -> Result<f64> {
            let v: f64 = s.parse().map_err(|_| bad(format!("bad coordinate `{s}`")))?;
            if !v.is_finite() {
                return Err(bad(format!("coordinate `{s}` is not finite")));
            }
            Ok(v)
        };
        let (x, y) = (coord(fields[1])?, coord(fields[2])?);
        let key = ((x + 0.0).to_bits(), (y + 0.0).to_bits());
        if let Some(&first) = seen.get(&key) {
            return Err(Error::DuplicatePoint { at: line, first });
        }
        seen.insert(key, line);
        records.push((color, T::lit(x), T::lit(y)));
        lines.push(line);
    }
    Instance::new(records).map_err(|e| match e {
        // distinct f64 values may collapse after narrowing to T
        Error::DuplicatePoint { at, first } => Error::DuplicatePoint { at: lines[at], first: lines[first] },
        other => other,
    })
}

/// Formats like C's `printf("%.17g", x)`, which round-trips every `f64`.
pub fn format_g17(x: f64) -> String {
    const P: i32 = 17;
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", (P - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let trim = |int: &str, frac: &str| {
        let frac = frac.trim_end_matches('0');
        if frac.is_empty() {
            int.to_string()
        } else {
            format!("{int}.{frac}")
        }
    };
    if exp < -4 || exp >= P {
        let body = trim(&digits[..1], &digits[1..]);
        let esign = if exp < 0 { '-' } else { '+' };
        format!("{sign}{body}e{esign}{:02}", exp.abs())
    } else if exp >= 0 {
        let cut = (exp + 1) as usize;
        format!("{sign}{}", trim(&digits[..cut], &digits[cut..]))
    } else {
        let zeros = "0".repeat((-exp - 1) as usize);
        format!("{sign}{}", trim("0", &format!("{zeros}{digits}")))
    }
}

/// Serializes points in id order, `<C> <x> <y>` with `%.17g` coordinates, LF-terminated.
pub fn serialize_instance<T: Scalar>(instance: &Instance<T>) -> String {
    serialize_with_comments(instance, &[])
}

/// Like [`serialize_instance`], followed by one `# ...` line per comment.
pub fn serialize_with_comments<T: Scalar>(instance: &Instance<T>, comments: &[String]) -> String {
    let mut s = String::with_capacity(instance.len() * 40);
    for p in instance.points() {
        let _ = writeln!(s, "{} {} {}", p.color.letter(), format_g17(p.x.as_f64()), format_g17(p.y.as_f64()));
    }
    for c in comments {
        let _ = writeln!(s, "# {c}");
    }
    s
}

/// Parses a `u v` edge list (comments and blank lines allowed).
pub fn parse_edge_list(text: &str) -> Result<Vec<(usize, usize)>> {
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let body = strip_comment(raw).trim();
        if body.is_empty() {
            continue;
        }
        let bad = |msg: &str| Error::Parse { line: idx + 1, msg: msg.to_string() };
        let mut it = body.split_whitespace();
        let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
            return Err(bad("expected `u v`"));
        };
        let u = a.parse().map_err(|_| bad("bad point id"))?;
        let v = b.parse().map_err(|_| bad("bad point id"))?;
        pairs.push((u, v));
    }
    Ok(pairs)
}

pub fn write_edge_list<T: Scalar>(edges: &EdgeSet<T>) -> String {
    let mut s = String::new();
    for e in edges.edges() {
        let _ = writeln!(s, "{} {}", e.u, e.v);
    }
    s
}
