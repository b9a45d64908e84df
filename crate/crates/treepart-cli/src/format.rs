//! Text formats for instances and solutions.
//!
//! Instance (UTF-8, `#` starts a comment line, blank lines skipped):
//!
//! ```text
//! n k b
//! s_1 ... s_b
//! u v          (n - 1 lines; u is the parent of v, ids 0-based)
//! ```
//!
//! Solution:
//!
//! ```text
//! CUT u1-v1 u2-v2 ...
//! ASSIGN <min-vertex-id> <group>      (one line per component, 1-based group)
//! ```

use std::collections::BTreeMap;
use std::fmt;

use treepart::{BudgetMode, CutSolution, Instance, InstanceError, Tree, TreeError, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based physical line; 0 when the input ended too early.
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedEnd(&'static str),
    Malformed(String),
    DuplicateEdge { parent: VertexId, child: VertexId },
    Tree(TreeError),
    Instance(InstanceError),
    TrailingContent,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.kind)
        } else {
            write!(f, "line {}: {}", self.line, self.kind)
        }
    }
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedEnd(what) => write!(f, "input ended before {what}"),
            ParseErrorKind::Malformed(why) => write!(f, "{why}"),
            ParseErrorKind::DuplicateEdge { parent, child } => {
                write!(f, "duplicate edge {parent} {child}")
            }
            ParseErrorKind::Tree(e) => write!(f, "{e}"),
            ParseErrorKind::Instance(e) => write!(f, "{e}"),
            ParseErrorKind::TrailingContent => write!(f, "unexpected content after the edges"),
        }
    }
}

impl std::error::Error for ParseError {}

/// Content lines with their 1-based physical numbers; comments and blanks
/// skipped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_fields<T: std::str::FromStr>(
    line_no: usize,
    line: &str,
    expected: usize,
    what: &str,
) -> Result<Vec<T>, ParseError> {
    let fields: Result<Vec<T>, _> = line.split_whitespace().map(str::parse).collect();
    match fields {
        Ok(v) if v.len() == expected => Ok(v),
        Ok(v) => Err(ParseError {
            line: line_no,
            kind: ParseErrorKind::Malformed(format!(
                "expected {expected} {what}, found {}",
                v.len()
            )),
        }),
        Err(_) => Err(ParseError {
            line: line_no,
            kind: ParseErrorKind::Malformed(format!("expected {expected} {what}")),
        }),
    }
}

/// Parses an instance; the budget reads as exact-k (callers flip the mode
/// via [`Instance::mode`] when asked for at-most-k).
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut lines = content_lines(text);
    let (header_no, header) = lines.next().ok_or(ParseError {
        line: 0,
        kind: ParseErrorKind::UnexpectedEnd("the `n k b` header"),
    })?;
    let nums: Vec<u64> = parse_fields(header_no, header, 3, "numbers (n k b)")?;
    let (n, k, b) = (nums[0] as usize, nums[1] as usize, nums[2] as usize);
    if n == 0 {
        return Err(ParseError {
            line: header_no,
            kind: ParseErrorKind::Malformed("n must be at least 1".into()),
        });
    }

    let (targets_no, targets_line) = lines.next().ok_or(ParseError {
        line: 0,
        kind: ParseErrorKind::UnexpectedEnd("the target line"),
    })?;
    let targets: Vec<u64> = parse_fields(targets_no, targets_line, b, "group sizes")?;

    let mut edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(n - 1);
    let mut last_edge_line = targets_no;
    let mut parent_of: Vec<Option<VertexId>> = vec![None; n];
    for _ in 0..n - 1 {
        let (edge_no, edge_line) = lines.next().ok_or(ParseError {
            line: 0,
            kind: ParseErrorKind::UnexpectedEnd("an edge line"),
        })?;
        last_edge_line = edge_no;
        let uv: Vec<u64> = parse_fields(edge_no, edge_line, 2, "vertex ids")?;
        let (u, v) = (uv[0], uv[1]);
        if u >= n as u64 || v >= n as u64 {
            return Err(ParseError {
                line: edge_no,
                kind: ParseErrorKind::Tree(TreeError::VertexOutOfRange {
                    vertex: u.max(v),
                    vertices: n,
                }),
            });
        }
        let (u, v) = (u as VertexId, v as VertexId);
        if v == 0 {
            return Err(ParseError {
                line: edge_no,
                kind: ParseErrorKind::Tree(TreeError::RootHasParent { root: 0 }),
            });
        }
        match parent_of[v as usize] {
            Some(p) if p == u => {
                return Err(ParseError {
                    line: edge_no,
                    kind: ParseErrorKind::DuplicateEdge { parent: u, child: v },
                });
            }
            Some(_) => {
                return Err(ParseError {
                    line: edge_no,
                    kind: ParseErrorKind::Tree(TreeError::SecondParent { child: v }),
                });
            }
            None => parent_of[v as usize] = Some(u),
        }
        edges.push((u, v));
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(ParseError { line: line_no, kind: ParseErrorKind::TrailingContent });
    }

    let tree = Tree::from_edges(n, &edges).map_err(|e| ParseError {
        line: last_edge_line,
        kind: ParseErrorKind::Tree(e),
    })?;
    Instance::new(tree, k, targets, BudgetMode::Exact).map_err(|e| {
        let line = match e {
            InstanceError::BudgetTooLarge { .. } => header_no,
            _ => targets_no,
        };
        ParseError { line, kind: ParseErrorKind::Instance(e) }
    })
}

pub fn write_instance(inst: &Instance) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{} {} {}\n",
        inst.vertex_count(),
        inst.budget,
        inst.groups()
    ));
    let targets: Vec<String> = inst.targets.iter().map(u64::to_string).collect();
    out.push_str(&targets.join(" "));
    out.push('\n');
    for (u, v) in inst.tree.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn parse_solution(text: &str) -> Result<CutSolution, ParseError> {
    let mut lines = content_lines(text);
    let (cut_no, cut_line) = lines.next().ok_or(ParseError {
        line: 0,
        kind: ParseErrorKind::UnexpectedEnd("the CUT line"),
    })?;
    let mut tokens = cut_line.split_whitespace();
    if tokens.next() != Some("CUT") {
        return Err(ParseError {
            line: cut_no,
            kind: ParseErrorKind::Malformed("solution must start with a CUT line".into()),
        });
    }
    let mut cut_edges = Vec::new();
    for token in tokens {
        let edge: Option<(VertexId, VertexId)> = token.split_once('-').and_then(|(a, b)| {
            Some((a.parse().ok()?, b.parse().ok()?))
        });
        match edge {
            Some(e) => cut_edges.push(e),
            None => {
                return Err(ParseError {
                    line: cut_no,
                    kind: ParseErrorKind::Malformed(format!("bad edge token `{token}`")),
                })
            }
        }
    }

    let mut assignment = BTreeMap::new();
    for (line_no, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 || fields[0] != "ASSIGN" {
            return Err(ParseError {
                line: line_no,
                kind: ParseErrorKind::Malformed("expected `ASSIGN <rep> <group>`".into()),
            });
        }
        let rep: VertexId = fields[1].parse().map_err(|_| ParseError {
            line: line_no,
            kind: ParseErrorKind::Malformed(format!("bad vertex id `{}`", fields[1])),
        })?;
        let group: usize = fields[2].parse().map_err(|_| ParseError {
            line: line_no,
            kind: ParseErrorKind::Malformed(format!("bad group index `{}`", fields[2])),
        })?;
        if group == 0 {
            return Err(ParseError {
                line: line_no,
                kind: ParseErrorKind::Malformed("group indices are 1-based".into()),
            });
        }
        if assignment.insert(rep, group - 1).is_some() {
            return Err(ParseError {
                line: line_no,
                kind: ParseErrorKind::Malformed(format!("representative {rep} assigned twice")),
            });
        }
    }
    Ok(CutSolution::new(cut_edges, assignment))
}

/// Multicolored-clique graph format: a `k n` header, then one line `j i q p`
/// per edge joining vertex `i` of class `j` to vertex `p` of class `q`
/// (classes and indices 1-based).
pub fn parse_mcc_graph(text: &str) -> Result<treepart::oracle::MccInstance, ParseError> {
    let mut lines = content_lines(text);
    let (header_no, header) = lines.next().ok_or(ParseError {
        line: 0,
        kind: ParseErrorKind::UnexpectedEnd("the `k n` header"),
    })?;
    let nums: Vec<usize> = parse_fields(header_no, header, 2, "numbers (k n)")?;
    let (k, n) = (nums[0], nums[1]);
    let mut edges = Vec::new();
    let mut last_line = header_no;
    for (line_no, line) in lines {
        last_line = line_no;
        let f: Vec<usize> = parse_fields(line_no, line, 4, "numbers (j i q p)")?;
        if f.iter().any(|&x| x == 0) {
            return Err(ParseError {
                line: line_no,
                kind: ParseErrorKind::Malformed("classes and indices are 1-based".into()),
            });
        }
        edges.push(((f[0] - 1, f[1] - 1), (f[2] - 1, f[3] - 1)));
    }
    treepart::oracle::MccInstance::new(k, n, &edges).map_err(|e| ParseError {
        line: last_line,
        kind: ParseErrorKind::Malformed(e.to_string()),
    })
}

pub fn write_solution(sol: &CutSolution) -> String {
    let mut out = String::from("CUT");
    for &(u, v) in &sol.cut_edges {
        out.push_str(&format!(" {u}-{v}"));
    }
    out.push('\n');
    for (&rep, &group) in &sol.assignment {
        out.push_str(&format!("ASSIGN {rep} {}\n", group + 1));
    }
    out
}
