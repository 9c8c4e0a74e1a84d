//! Plain-text gain graph files.
//!
//! ```text
//! gaingraph 3
//! # u v gain [w=weight], vertices 1-based
//! 1 2 pi:1/2
//! 2 3 0.6-0.8i w=2.5
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gain::UnitGain;
use crate::graph::GainGraph;
use crate::weighted::WeightedGainGraph;

/// Accepted deviation of a literal `a+bi` gain from the unit circle.
pub const LITERAL_UNIT_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub enum ParsedGraph {
    Plain(GainGraph),
    /// At least one edge carried `w=`; the others default to weight 1.
    Weighted(WeightedGainGraph),
}

impl ParsedGraph {
    pub fn graph(&self) -> &GainGraph {
        match self {
            ParsedGraph::Plain(g) => g,
            ParsedGraph::Weighted(wg) => wg.base(),
        }
    }

    /// Weighted view; plain graphs get unit weights.
    pub fn weighted(&self) -> WeightedGainGraph {
        match self {
            ParsedGraph::Plain(g) => WeightedGainGraph::uniform(g.clone(), 1.0).expect("unit weights"),
            ParsedGraph::Weighted(wg) => wg.clone(),
        }
    }
}

pub fn parse_gain(token: &str) -> std::result::Result<UnitGain, String> {
    if let Some(frac) = token.strip_prefix("pi:") {
        let (p, q) = frac
            .split_once('/')
            .ok_or_else(|| format!("expected pi:p/q, got {token:?}"))?;
        let p: i64 = p.trim().parse().map_err(|_| format!("bad numerator in {token:?}"))?;
        let q: i64 = q.trim().parse().map_err(|_| format!("bad denominator in {token:?}"))?;
        return UnitGain::from_pi_fraction(p, q).map_err(|e| e.to_string());
    }
    let z = parse_complex(token).ok_or_else(|| format!("unrecognized gain {token:?}"))?;
    UnitGain::normalized(z, LITERAL_UNIT_TOLERANCE).map_err(|e| e.to_string())
}

fn parse_complex(token: &str) -> Option<Complex64> {
    let Some(body) = token.strip_suffix('i') else {
        return token.parse().ok().map(|re| Complex64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    // last sign that is neither leading nor part of an exponent
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'))?;
    let re: f64 = body[..split].parse().ok()?;
    let im: f64 = match &body[split..] {
        "+" => 1.0,
        "-" => -1.0,
        s => s.strip_prefix('+').unwrap_or(s).parse().ok()?,
    };
    Some(Complex64::new(re, im))
}

pub fn parse_graph(text: &str) -> Result<ParsedGraph> {
    let mut n = None;
    let mut edges = Vec::new();
    let mut weights = Vec::new();
    let mut any_weight = false;
    let mut seen = HashSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some(order) = n else {
            if tokens.len() != 2 || tokens[0] != "gaingraph" {
                return Err(Error::parse(line, "expected header `gaingraph <n>`"));
            }
            n = Some(
                tokens[1]
                    .parse::<usize>()
                    .map_err(|_| Error::parse(line, format!("bad vertex count {:?}", tokens[1])))?,
            );
            continue;
        };
        if !(3..=4).contains(&tokens.len()) {
            return Err(Error::parse(line, "expected `<u> <v> <gain> [w=<weight>]`"));
        }
        let vertex = |tok: &str| -> Result<usize> {
            let v: usize = tok
                .parse()
                .map_err(|_| Error::parse(line, format!("bad vertex {tok:?}")))?;
            if v == 0 || v > order {
                return Err(Error::parse(line, format!("vertex {v} out of range 1..={order}")));
            }
            Ok(v - 1)
        };
        let (u, v) = (vertex(tokens[0])?, vertex(tokens[1])?);
        if u == v {
            return Err(Error::parse(line, format!("loop at vertex {}", u + 1)));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::parse(line, format!("duplicate edge {}-{}", u + 1, v + 1)));
        }
        let gain = parse_gain(tokens[2]).map_err(|m| Error::parse(line, m))?;
        let weight = match tokens.get(3) {
            None => 1.0,
            Some(tok) => {
                any_weight = true;
                let w: f64 = tok
                    .strip_prefix("w=")
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::parse(line, format!("bad weight {tok:?}")))?;
                if !(w.is_finite() && w > 0.0) {
                    return Err(Error::parse(line, Error::NonPositiveWeight(w).to_string()));
                }
                w
            }
        };
        edges.push((u, v, gain));
        weights.push((u, v, weight));
    }

    let n = n.ok_or_else(|| Error::parse(1, "missing header `gaingraph <n>`"))?;
    let g = GainGraph::new(n, edges)?;
    if !any_weight {
        return Ok(ParsedGraph::Plain(g));
    }
    let mut w = vec![0.0; g.edge_count()];
    for (u, v, x) in weights {
        w[g.edge_index(u, v).expect("edge present")] = x;
    }
    Ok(ParsedGraph::Weighted(WeightedGainGraph::new(g, w)?))
}

fn write_gain(out: &mut String, g: UnitGain) {
    // shortest round-trip representation of each part
    let _ = write!(out, "{}{}{}i", g.re(), if g.im().is_sign_negative() { "-" } else { "+" }, g.im().abs());
}

pub fn serialize(g: &GainGraph) -> String {
    let mut out = format!("gaingraph {}\n", g.order());
    for e in g.edges() {
        let _ = write!(out, "{} {} ", e.u + 1, e.v + 1);
        write_gain(&mut out, e.gain);
        out.push('\n');
    }
    out
}

pub fn serialize_weighted(wg: &WeightedGainGraph) -> String {
    let g = wg.base();
    let mut out = format!("gaingraph {}\n", g.order());
    for (e, w) in g.edges().iter().zip(wg.weights()) {
        let _ = write!(out, "{} {} ", e.u + 1, e.v + 1);
        write_gain(&mut out, e.gain);
        let _ = writeln!(out, " w={w}");
    }
    out
}
