//! Line-oriented text format for structures: a header line per object
//! (kind plus parameters), then one line per vertex set. Comment lines start
//! with '#'; a set line of "-" is the empty set.

use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::structures::*;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructParseError {
    #[error("line {0}: {1}")]
    At(usize, String),
    #[error("unexpected end of input, expected {0}")]
    Eof(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Levelling(Levelling),
    Covering(Covering),
    Sequence(CoveringSequence),
    Multicovering(Multicovering),
    Battery(Battery),
    Spider(Spider),
    Lobster(Lobster),
    Troupe(Troupe),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Levelling(_) => "levelling",
            Structure::Covering(_) => "covering",
            Structure::Sequence(_) => "sequence",
            Structure::Multicovering(_) => "multicovering",
            Structure::Battery(_) => "battery",
            Structure::Spider(_) => "spider",
            Structure::Lobster(_) => "lobster",
            Structure::Troupe(_) => "troupe",
        }
    }

    /// Dispatches to the matching validator. Battery mass/height bounds need
    /// parameters, supplied separately.
    pub fn validate(&self, g: &Graph, battery_params: Option<BatteryParams>) -> Check {
        match self {
            Structure::Levelling(x) => validate_levelling(g, x),
            Structure::Covering(x) => validate_covering(g, x),
            Structure::Sequence(x) => validate_covering_sequence(g, x),
            Structure::Multicovering(x) => validate_multicovering(g, x),
            Structure::Battery(x) => {
                let p = battery_params.unwrap_or(BatteryParams { c: 1.0, x: 0.0 });
                validate_battery(g, x, p)
            }
            Structure::Spider(x) => validate_spider(g, x),
            Structure::Lobster(x) => validate_lobster(g, x),
            Structure::Troupe(x) => validate_troupe(g, x),
        }
    }
}

struct Lines<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
    capacity: usize,
}

impl<'a> Lines<'a> {
    fn next(&mut self, what: &'static str) -> Result<(usize, &'a str), StructParseError> {
        let item = self
            .items
            .get(self.pos)
            .copied()
            .ok_or(StructParseError::Eof(what))?;
        self.pos += 1;
        Ok(item)
    }

    fn set(&mut self) -> Result<VertexSet, StructParseError> {
        let (ln, line) = self.next("a vertex set line")?;
        let mut s = VertexSet::new(self.capacity);
        if line.trim() == "-" {
            return Ok(s);
        }
        for tok in line.split_whitespace() {
            let v: usize = tok
                .parse()
                .map_err(|_| StructParseError::At(ln, format!("bad vertex id '{tok}'")))?;
            if v >= self.capacity {
                return Err(StructParseError::At(
                    ln,
                    format!("vertex {v} out of range (n = {})", self.capacity),
                ));
            }
            s.insert(v);
        }
        Ok(s)
    }

    fn header(
        &mut self,
        expect: Option<&'static str>,
    ) -> Result<(usize, &'a str, Vec<&'a str>), StructParseError> {
        let (ln, line) = self.next("a header line")?;
        let mut toks = line.split_whitespace();
        let kind = toks.next().ok_or(StructParseError::At(ln, "empty header".into()))?;
        if let Some(e) = expect {
            if kind != e {
                return Err(StructParseError::At(ln, format!("expected '{e}', got '{kind}'")));
            }
        }
        Ok((ln, kind, toks.collect()))
    }

    fn count(&self, ln: usize, args: &[&str], idx: usize) -> Result<usize, StructParseError> {
        args.get(idx)
            .and_then(|t| t.parse().ok())
            .ok_or(StructParseError::At(ln, format!("missing or bad count argument {idx}")))
    }
}

/// Parses one structure; `capacity` is the host graph's vertex count.
pub fn parse_structure(text: &str, capacity: usize) -> Result<Structure, StructParseError> {
    let items: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let mut lines = Lines {
        items,
        pos: 0,
        capacity,
    };
    let s = parse_any(&mut lines)?;
    if lines.pos != lines.items.len() {
        let (ln, _) = lines.items[lines.pos];
        return Err(StructParseError::At(ln, "trailing content".into()));
    }
    Ok(s)
}

fn parse_any(lines: &mut Lines) -> Result<Structure, StructParseError> {
    let (ln, kind, args) = lines.header(None)?;
    match kind {
        "levelling" => Ok(Structure::Levelling(parse_levelling_body(lines, ln, &args)?)),
        "covering" => Ok(Structure::Covering(parse_covering_body(lines, ln, &args)?)),
        "sequence" => {
            let n = lines.count(ln, &args, 0)?;
            let mut terms = Vec::new();
            for _ in 0..n {
                let (ln2, _, args2) = lines.header(Some("covering"))?;
                terms.push(parse_covering_body(lines, ln2, &args2)?);
            }
            Ok(Structure::Sequence(CoveringSequence { terms }))
        }
        "multicovering" => {
            let mc = parse_multicovering_body(lines, ln, &args)?;
            Ok(Structure::Multicovering(mc))
        }
        "battery" => {
            let t = lines.count(ln, &args, 0)?;
            let mut multis = Vec::new();
            for _ in 0..t {
                let (ln2, _, args2) = lines.header(Some("multicovering"))?;
                multis.push(parse_multicovering_body(lines, ln2, &args2)?);
            }
            Ok(Structure::Battery(Battery { multis }))
        }
        "spider" => Ok(Structure::Spider(parse_spider_body(lines, ln, &args)?)),
        "lobster" => Ok(Structure::Lobster(parse_lobster_body(lines, ln, &args)?)),
        "troupe" => {
            let flavour = *args.first().ok_or(StructParseError::At(
                ln,
                "troupe needs 'spiders' or 'lobsters'".into(),
            ))?;
            let m = lines.count(ln, &args, 1)?;
            match flavour {
                "spiders" => {
                    let mut v = Vec::new();
                    for _ in 0..m {
                        let (ln2, _, args2) = lines.header(Some("spider"))?;
                        v.push(parse_spider_body(lines, ln2, &args2)?);
                    }
                    Ok(Structure::Troupe(Troupe::Spiders(v)))
                }
                "lobsters" => {
                    let mut v = Vec::new();
                    for _ in 0..m {
                        let (ln2, _, args2) = lines.header(Some("lobster"))?;
                        v.push(parse_lobster_body(lines, ln2, &args2)?);
                    }
                    Ok(Structure::Troupe(Troupe::Lobsters(v)))
                }
                other => Err(StructParseError::At(
                    ln,
                    format!("unknown troupe flavour '{other}'"),
                )),
            }
        }
        other => Err(StructParseError::At(ln, format!("unknown structure kind '{other}'"))),
    }
}

fn parse_levelling_body(
    lines: &mut Lines,
    ln: usize,
    args: &[&str],
) -> Result<Levelling, StructParseError> {
    let k = lines.count(ln, args, 0)?;
    if k < 2 {
        return Err(StructParseError::At(ln, "levelling needs at least 2 layers".into()));
    }
    let mut layers = Vec::with_capacity(k);
    for _ in 0..k {
        layers.push(lines.set()?);
    }
    Ok(Levelling { layers })
}

fn parse_covering_body(
    lines: &mut Lines,
    ln: usize,
    args: &[&str],
) -> Result<Covering, StructParseError> {
    let apex = lines.count(ln, args, 0)?;
    let heart = lines.set()?;
    let base = lines.set()?;
    Ok(Covering { apex, heart, base })
}

fn parse_multicovering_body(
    lines: &mut Lines,
    ln: usize,
    args: &[&str],
) -> Result<Multicovering, StructParseError> {
    let n = lines.count(ln, args, 0)?;
    let mut terms = Vec::new();
    for _ in 0..n {
        let (ln2, _, args2) = lines.header(Some("covering"))?;
        terms.push(parse_covering_body(lines, ln2, &args2)?);
    }
    Ok(Multicovering { terms })
}

fn parse_spider_body(
    lines: &mut Lines,
    ln: usize,
    args: &[&str],
) -> Result<Spider, StructParseError> {
    let apex = lines.count(ln, args, 0)?;
    let n = lines.count(ln, args, 1)?;
    let mut members = Vec::new();
    for _ in 0..n {
        let heart = lines.set()?;
        let base = lines.set()?;
        members.push(Covering { apex, heart, base });
    }
    Ok(Spider { apex, members })
}

fn parse_lobster_body(
    lines: &mut Lines,
    ln: usize,
    args: &[&str],
) -> Result<Lobster, StructParseError> {
    let apex = lines.count(ln, args, 0)?;
    let n = lines.count(ln, args, 1)?;
    let mut members = Vec::new();
    for _ in 0..n {
        let (ln2, _, args2) = lines.header(Some("member"))?;
        let k = lines.count(ln2, &args2, 0)?;
        let mut layers = Vec::with_capacity(k);
        for _ in 0..k {
            layers.push(lines.set()?);
        }
        members.push(Levelling { layers });
    }
    Ok(Lobster { apex, members })
}

fn set_line(s: &VertexSet) -> String {
    if s.is_empty() {
        "-".to_string()
    } else {
        s.iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub fn write_structure(s: &Structure) -> String {
    let mut out = String::new();
    write_any(s, &mut out);
    out
}

fn write_any(s: &Structure, out: &mut String) {
    match s {
        Structure::Levelling(lv) => write_levelling(lv, out),
        Structure::Covering(cv) => write_covering(cv, out),
        Structure::Sequence(seq) => {
            out.push_str(&format!("sequence {}\n", seq.terms.len()));
            for t in &seq.terms {
                write_covering(t, out);
            }
        }
        Structure::Multicovering(mc) => write_multicovering(mc, out),
        Structure::Battery(bat) => {
            out.push_str(&format!("battery {}\n", bat.multis.len()));
            for m in &bat.multis {
                write_multicovering(m, out);
            }
        }
        Structure::Spider(sp) => write_spider(sp, out),
        Structure::Lobster(lb) => write_lobster(lb, out),
        Structure::Troupe(tr) => match tr {
            Troupe::Spiders(v) => {
                out.push_str(&format!("troupe spiders {}\n", v.len()));
                for s in v {
                    write_spider(s, out);
                }
            }
            Troupe::Lobsters(v) => {
                out.push_str(&format!("troupe lobsters {}\n", v.len()));
                for l in v {
                    write_lobster(l, out);
                }
            }
        },
    }
}

fn write_levelling(lv: &Levelling, out: &mut String) {
    out.push_str(&format!("levelling {}\n", lv.layers.len()));
    for l in &lv.layers {
        out.push_str(&set_line(l));
        out.push('\n');
    }
}

fn write_covering(cv: &Covering, out: &mut String) {
    out.push_str(&format!("covering {}\n", cv.apex));
    out.push_str(&set_line(&cv.heart));
    out.push('\n');
    out.push_str(&set_line(&cv.base));
    out.push('\n');
}

fn write_multicovering(mc: &Multicovering, out: &mut String) {
    out.push_str(&format!("multicovering {}\n", mc.terms.len()));
    for t in &mc.terms {
        write_covering(t, out);
    }
}

fn write_spider(sp: &Spider, out: &mut String) {
    out.push_str(&format!("spider {} {}\n", sp.apex, sp.members.len()));
    for m in &sp.members {
        out.push_str(&set_line(&m.heart));
        out.push('\n');
        out.push_str(&set_line(&m.base));
        out.push('\n');
    }
}

fn write_lobster(lb: &Lobster, out: &mut String) {
    out.push_str(&format!("lobster {} {}\n", lb.apex, lb.members.len()));
    for m in &lb.members {
        out.push_str(&format!("member {}\n", m.layers.len()));
        for l in &m.layers {
            out.push_str(&set_line(l));
            out.push('\n');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levelling_round_trip() {
        let text = "levelling 3\n0\n1 2\n3 4 5\n";
        let s = parse_structure(text, 6).unwrap();
        assert_eq!(write_structure(&s), text);
    }

    #[test]
    fn covering_and_spider_round_trip() {
        for text in [
            "covering 0\n0 1\n3 4\n",
            "spider 0 2\n0 1\n3 4\n0 2\n5 6\n",
            "sequence 2\ncovering 0\n0\n1\ncovering 2\n2\n3\n",
            "multicovering 2\ncovering 0\n0\n2 3\ncovering 1\n1\n2 3\n",
            "battery 1\nmulticovering 1\ncovering 0\n0\n1 2\n",
            "lobster 0 1\nmember 3\n0\n1\n2 3\n",
            "troupe lobsters 1\nlobster 0 1\nmember 2\n0\n1 2\n",
        ] {
            let s = parse_structure(text, 8).unwrap();
            assert_eq!(write_structure(&s), text, "round trip failed for {text}");
        }
    }

    #[test]
    fn parse_errors() {
        assert!(parse_structure("levelling 2\n0\n9\n", 6).is_err());
        assert!(parse_structure("widget 1\n", 6).is_err());
        assert!(parse_structure("levelling 3\n0\n1\n", 6).is_err());
        assert!(parse_structure("levelling 2\n0\n1\nextra\n", 6).is_err());
    }

    #[test]
    fn empty_set_marker() {
        let s = parse_structure("covering 0\n0\n-\n", 3).unwrap();
        if let Structure::Covering(cv) = &s {
            assert!(cv.base.is_empty());
        } else {
            panic!("wrong kind");
        }
        assert_eq!(write_structure(&s), "covering 0\n0\n-\n");
    }

    #[test]
    fn validate_dispatch() {
        let g = crate::graph::Graph::path(4);
        let s = parse_structure("levelling 4\n0\n1\n2\n3\n", 4).unwrap();
        assert_eq!(s.validate(&g, None), Ok(()));
        let bad = parse_structure("levelling 3\n0\n2\n3\n", 4).unwrap();
        assert!(bad.validate(&g, None).is_err());
    }
}
