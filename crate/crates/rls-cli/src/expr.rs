//! Parsers for the numeric expressions accepted on the command line.
//!
//! Real values follow the grammar `[-][A][*]pi[/B]` or a plain number,
//! where `A` and `B` are integers, rationals (`3/4`), or decimals
//! (`0.25`, `1e-3`). Complex values are `RE,IM` with each component a
//! real expression; a bare `RE` means a real point, and an `i` suffix
//! (`0.5i`, `pi/2i`, `i`) means a purely imaginary one.

use rls_core::bigfloat::{BigComplex, BigReal};
use rls_core::{Integer, Rational};

/// Parses a real expression at `bits` of precision.
pub fn parse_real(expr: &str, bits: u32) -> Result<BigReal, String> {
    let compact: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    let lower = compact.to_ascii_lowercase();
    if lower.is_empty() {
        return Err("empty numeric expression".to_string());
    }
    let (neg, body) = match lower.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, lower.strip_prefix('+').unwrap_or(&lower)),
    };
    if body.is_empty() {
        return Err(format!("cannot parse `{expr}` as a real value"));
    }
    let value = if let Some(idx) = body.find("pi") {
        let before = &body[..idx];
        let after = &body[idx + 2..];
        let factor = if before.is_empty() {
            BigReal::with_val(bits, 1)
        } else {
            let stripped = before.strip_suffix('*').unwrap_or(before);
            if stripped.is_empty() {
                return Err(format!("cannot parse `{expr}`: nothing before `*pi`"));
            }
            parse_number(stripped, bits)
                .map_err(|e| format!("cannot parse `{expr}`: {e}"))?
        };
        let pi = BigReal::with_val(bits, 1u32).atan() * 4u32;
        let mut v = pi * factor;
        if !after.is_empty() {
            let denom_src = after.strip_prefix('/').ok_or_else(|| {
                format!("cannot parse `{expr}`: expected the form `[A*]pi[/B]`")
            })?;
            let denom = parse_number(denom_src, bits)
                .map_err(|e| format!("cannot parse `{expr}`: {e}"))?;
            if denom.is_zero() {
                return Err(format!("cannot parse `{expr}`: division by zero"));
            }
            v /= denom;
        }
        v
    } else {
        parse_number(body, bits).map_err(|e| format!("cannot parse `{expr}`: {e}"))?
    };
    Ok(if neg { -value } else { value })
}

/// A number token: integer, `a/b` rational, or decimal/scientific.
fn parse_number(tok: &str, bits: u32) -> Result<BigReal, String> {
    if tok.is_empty() {
        return Err("empty number".to_string());
    }
    if let Some((num_src, den_src)) = tok.split_once('/') {
        let num = num_src
            .parse::<Integer>()
            .map_err(|_| format!("`{num_src}` is not an integer"))?;
        let den = den_src
            .parse::<Integer>()
            .map_err(|_| format!("`{den_src}` is not an integer"))?;
        if den == 0 {
            return Err("division by zero".to_string());
        }
        Ok(BigReal::with_val(bits, Rational::from((num, den))))
    } else {
        let incomplete =
            BigReal::parse(tok).map_err(|_| format!("`{tok}` is not a number"))?;
        let v = BigReal::with_val(bits, incomplete);
        if !v.is_finite() {
            return Err(format!("`{tok}` is not finite"));
        }
        Ok(v)
    }
}

/// Parses a complex expression at `bits` of precision.
pub fn parse_complex(expr: &str, bits: u32) -> Result<BigComplex, String> {
    if let Some((re_src, im_src)) = expr.split_once(',') {
        let re = parse_real(re_src, bits)?;
        let im = parse_real(im_src, bits)?;
        return Ok(BigComplex::with_val(bits, (re, im)));
    }
    let compact: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    let lower = compact.to_ascii_lowercase();
    if lower.is_empty() {
        return Err("empty numeric expression".to_string());
    }
    if lower == "i" || lower == "+i" {
        return Ok(BigComplex::with_val(bits, (0, 1)));
    }
    if lower == "-i" {
        return Ok(BigComplex::with_val(bits, (0, -1)));
    }
    if let Some(prefix) = lower.strip_suffix('i') {
        let prefix = prefix.strip_suffix('*').unwrap_or(prefix);
        let im = parse_real(prefix, bits).map_err(|e| {
            format!("{e}; complex values are written `RE,IM` (or `0.5i` for purely imaginary)")
        })?;
        return Ok(BigComplex::with_val(bits, (BigReal::new(bits), im)));
    }
    let re = parse_real(&lower, bits).map_err(|e| {
        format!("{e}; complex values are written `RE,IM` (or `0.5i` for purely imaginary)")
    })?;
    Ok(BigComplex::with_val(bits, (re, BigReal::new(bits))))
}

/// Parses a `k` range: a single value (`3`) or an inclusive span
/// (`1..20`, `1..=20`).
pub fn parse_k_range(src: &str) -> Result<Vec<u32>, String> {
    let s = src.trim();
    let parse_end = |t: &str| {
        t.trim()
            .parse::<u32>()
            .map_err(|_| format!("`{t}` is not a nonnegative integer"))
    };
    let (lo, hi) = if let Some((a, b)) = s.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        (parse_end(a)?, parse_end(b)?)
    } else {
        let v = parse_end(s)?;
        (v, v)
    };
    if lo > hi {
        return Err(format!("empty k range `{src}`"));
    }
    if lo == 0 {
        return Err("k = 0 has no polynomial; the range must start at 1".to_string());
    }
    Ok((lo..=hi).collect())
}
