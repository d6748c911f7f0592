//! Plain-text graph format: a header `n loops(0|1)` followed by one
//! `u v` line per edge (0-indexed). Blank lines and `#` comments are skipped.

use super::Graph;
use crate::error::{Error, Result};

fn fields(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out
}

fn number(lineno: usize, col: usize, tok: &str) -> Result<usize> {
    tok.parse().map_err(|_| {
        Error::parse(
            lineno,
            col + 1,
            format!("expected a nonnegative integer, found `{tok}`"),
        )
    })
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .filter(|(_, l)| !l.trim().is_empty());
    let (hl, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, 1, "missing header `n loops`"))?;
    let hf = fields(header);
    if hf.len() != 2 {
        return Err(Error::parse(hl, 1, "header must be `n loops`"));
    }
    let n = number(hl, hf[0].0, hf[0].1)?;
    let loops = match hf[1].1 {
        "0" => false,
        "1" => true,
        other => {
            return Err(Error::parse(
                hl,
                hf[1].0 + 1,
                format!("loops flag must be 0 or 1, found `{other}`"),
            ))
        }
    };
    let mut g = Graph::empty(n, loops);
    for (ln, line) in lines {
        let f = fields(line);
        if f.len() != 2 {
            return Err(Error::parse(ln, 1, "edge line must be `u v`"));
        }
        let u = number(ln, f[0].0, f[0].1)?;
        let v = number(ln, f[1].0, f[1].1)?;
        for (x, (col, _)) in [(u, f[0]), (v, f[1])] {
            if x >= n {
                return Err(Error::parse(
                    ln,
                    col + 1,
                    format!("vertex {x} out of range for n = {n}"),
                ));
            }
        }
        if u == v && !loops {
            return Err(Error::parse(ln, 1, "loop in a graph declared loopless"));
        }
        g.set(u, v);
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), u8::from(g.loops_allowed()));
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::{gen_named, Family};
    use super::*;

    #[test]
    fn round_trip() {
        let g = gen_named(&Family::Petersen).unwrap();
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        let looped = parse_graph("3 1\n0 0\n0 1\n# comment\n\n1 2\n").unwrap();
        assert!(looped.has_edge(0, 0) && looped.has_edge(2, 1));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_graph("4 0\n0 1\n1  x\n").unwrap_err(),
            Error::parse(3, 4, "expected a nonnegative integer, found `x`")
        );
        assert!(matches!(
            parse_graph("4 0\n0 9\n"),
            Err(Error::Parse {
                line: 2,
                column: 3,
                ..
            })
        ));
        assert!(matches!(
            parse_graph("4 2\n"),
            Err(Error::Parse {
                line: 1,
                column: 3,
                ..
            })
        ));
        assert!(matches!(
            parse_graph("3 0\n1 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(parse_graph(""), Err(Error::Parse { line: 1, .. })));
    }
}
