//! Parsing of weight and angle lists.

use std::f64::consts::PI;

/// Comma-separated positive weights.
pub fn weights(s: &str) -> Result<Vec<f64>, String> {
    list(s)?
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            t.parse::<f64>()
                .map_err(|_| format!("weight {} ({t:?}) is not a number", i + 1))
        })
        .collect()
}

/// Comma-separated angles. Each entry is either a decimal in radians or a
/// rational multiple of π: `pi`, `pi/5`, `2pi/5`, `2*pi/5`, `3π/7`, `-pi/4`.
/// The multiple is reduced as an integer fraction `p/q` and converted once,
/// as `p·π/q`.
pub fn angles(s: &str) -> Result<Vec<f64>, String> {
    list(s)?
        .into_iter()
        .enumerate()
        .map(|(i, t)| angle(t).map_err(|e| format!("angle {} ({t:?}): {e}", i + 1)))
        .collect()
}

fn list(s: &str) -> Result<Vec<&str>, String> {
    let items: Vec<&str> = s.split(',').map(str::trim).collect();
    if items.iter().any(|t| t.is_empty()) {
        return Err(format!("empty entry in list {s:?}"));
    }
    Ok(items)
}

pub fn angle(t: &str) -> Result<f64, String> {
    let lower = t.to_ascii_lowercase();
    let Some(pos) = lower
        .find("pi")
        .map(|p| (p, 2))
        .or_else(|| lower.find('π').map(|p| (p, 'π'.len_utf8())))
    else {
        return t
            .parse::<f64>()
            .map_err(|_| "not a number or multiple of pi".to_string());
    };
    let (at, width) = pos;
    let head = lower[..at].trim().trim_end_matches('*').trim();
    let tail = lower[at + width..].trim();

    let p: i64 = match head {
        "" | "+" => 1,
        "-" => -1,
        h => h.parse().map_err(|_| format!("bad numerator {h:?}"))?,
    };
    let q: i64 = match tail {
        "" => 1,
        t => t
            .strip_prefix('/')
            .ok_or_else(|| format!("expected '/' after pi, got {t:?}"))?
            .trim()
            .parse()
            .map_err(|_| format!("bad denominator in {t:?}"))?,
    };
    if q <= 0 {
        return Err("denominator must be positive".into());
    }
    let g = gcd(p.unsigned_abs(), q.unsigned_abs()).max(1) as i64;
    let (p, q) = (p / g, q / g);
    Ok(p as f64 * PI / q as f64)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
