//! Instance file format: one record per line, `#` starts a comment.
//!
//! ```text
//! group cyclic 2          # or: bitvec <m> | sym <n> | free [<gens>]
//! vertices 3
//! param 1
//! edge 0 1 1              # undirected, emits both arcs
//! arc 1 2 1               # directed; reverse arc auto-added with the
//!                         # inverted label unless given explicitly
//! terminal 0              # multiway cut inputs
//! special 0 1             # edge-subset FVS inputs
//! forbidden 2             # protected vertices (labeled instances)
//! ```
//!
//! Labeled instances require a `group` line and a label on every
//! edge/arc record; unlabeled source inputs (for `convert` and
//! `solve-mwc`) must omit both. Element encodings: cyclic as a decimal
//! residue, bit vectors as a 0/1 string (`e` when m = 0), permutations as
//! a space-separated image list, free words as `gN`/`gN^` tokens with `e`
//! for the empty word.

use std::fmt;

use gfvs::encode::EsfvsInstance;
use gfvs::{GfvsInstance, GroupOracle, GroupSpec, LabeledGraph, UndirectedGraph};

#[derive(Debug)]
pub enum CliError {
    Parse { line: usize, msg: String },
    Usage(String),
    Lib(gfvs::Error),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse { line, msg } => write!(f, "line {line}: {msg}"),
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<gfvs::Error> for CliError {
    fn from(e: gfvs::Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn parse_err(line: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse { line, msg: msg.into() }
}

#[derive(Debug, Clone)]
pub struct RawEdge {
    pub directed: bool,
    pub u: usize,
    pub v: usize,
    pub label: Option<String>,
    pub line: usize,
}

/// Parsed records of one instance file, before interpretation.
#[derive(Debug, Clone, Default)]
pub struct RawInstance {
    pub group: Option<GroupSpec>,
    pub vertices: Option<usize>,
    pub param: Option<usize>,
    pub edges: Vec<RawEdge>,
    pub terminals: Vec<usize>,
    pub specials: Vec<(usize, usize)>,
    pub forbidden: Vec<usize>,
}

pub fn parse_group_spec(tokens: &[&str]) -> Result<GroupSpec, String> {
    match tokens {
        ["cyclic", n] => n
            .parse::<u64>()
            .ok()
            .filter(|&n| n >= 1)
            .map(GroupSpec::Cyclic)
            .ok_or_else(|| format!("bad cyclic modulus {n:?}")),
        ["bitvec", m] => m
            .parse::<usize>()
            .map(GroupSpec::BitVector)
            .map_err(|_| format!("bad bit-vector dimension {m:?}")),
        ["sym", n] => n
            .parse::<usize>()
            .ok()
            .filter(|&n| n >= 1)
            .map(GroupSpec::Symmetric)
            .ok_or_else(|| format!("bad symmetric degree {n:?}")),
        ["free"] => Ok(GroupSpec::Free(None)),
        ["free", g] => g
            .parse::<u32>()
            .ok()
            .filter(|&g| g >= 1)
            .map(|g| GroupSpec::Free(Some(g)))
            .ok_or_else(|| format!("bad generator count {g:?}")),
        _ => Err(format!("unknown group {:?}", tokens.join(" "))),
    }
}

pub fn format_group_spec(spec: GroupSpec) -> String {
    match spec {
        GroupSpec::Cyclic(n) => format!("group cyclic {n}"),
        GroupSpec::BitVector(m) => format!("group bitvec {m}"),
        GroupSpec::Symmetric(n) => format!("group sym {n}"),
        GroupSpec::Free(Some(g)) => format!("group free {g}"),
        GroupSpec::Free(None) => "group free".to_string(),
    }
}

pub fn parse_raw(text: &str) -> CliResult<RawInstance> {
    let mut raw = RawInstance::default();
    for (idx, full_line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = full_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let int = |tok: &str, what: &str| {
            tok.parse::<usize>().map_err(|_| parse_err(lineno, format!("bad {what} {tok:?}")))
        };
        match tokens[0] {
            "group" => {
                if raw.group.is_some() {
                    return Err(parse_err(lineno, "duplicate group record"));
                }
                raw.group =
                    Some(parse_group_spec(&tokens[1..]).map_err(|msg| parse_err(lineno, msg))?);
            }
            "vertices" => {
                let [_, n] = tokens[..] else {
                    return Err(parse_err(lineno, "expected: vertices <n>"));
                };
                if raw.vertices.is_some() {
                    return Err(parse_err(lineno, "duplicate vertices record"));
                }
                raw.vertices = Some(int(n, "vertex count")?);
            }
            "param" => {
                let [_, k] = tokens[..] else {
                    return Err(parse_err(lineno, "expected: param <k>"));
                };
                if raw.param.is_some() {
                    return Err(parse_err(lineno, "duplicate param record"));
                }
                raw.param = Some(int(k, "parameter")?);
            }
            "edge" | "arc" => {
                if tokens.len() < 3 {
                    return Err(parse_err(lineno, format!("expected: {} <u> <v> [label]", tokens[0])));
                }
                let label =
                    (tokens.len() > 3).then(|| tokens[3..].join(" "));
                raw.edges.push(RawEdge {
                    directed: tokens[0] == "arc",
                    u: int(tokens[1], "vertex")?,
                    v: int(tokens[2], "vertex")?,
                    label,
                    line: lineno,
                });
            }
            "terminal" => {
                let [_, v] = tokens[..] else {
                    return Err(parse_err(lineno, "expected: terminal <v>"));
                };
                raw.terminals.push(int(v, "vertex")?);
            }
            "special" => {
                let [_, u, v] = tokens[..] else {
                    return Err(parse_err(lineno, "expected: special <u> <v>"));
                };
                raw.specials.push((int(u, "vertex")?, int(v, "vertex")?));
            }
            "forbidden" => {
                let [_, v] = tokens[..] else {
                    return Err(parse_err(lineno, "expected: forbidden <v>"));
                };
                raw.forbidden.push(int(v, "vertex")?);
            }
            other => return Err(parse_err(lineno, format!("unknown record {other:?}"))),
        }
    }
    Ok(raw)
}

fn required<T: Copy>(field: Option<T>, what: &str) -> CliResult<T> {
    field.ok_or_else(|| CliError::Usage(format!("missing {what} record")))
}

/// Interpret the records as a labeled instance. Returns the instance plus
/// the forbidden-vertex list (the caller applies the protection gadget).
pub fn to_gfvs(raw: &RawInstance) -> CliResult<(GfvsInstance, Vec<usize>)> {
    let spec = required(raw.group, "group")?;
    let n = required(raw.vertices, "vertices")?;
    let k = required(raw.param, "param")?;
    if !raw.terminals.is_empty() || !raw.specials.is_empty() {
        return Err(CliError::Usage(
            "terminal/special records belong to unlabeled source inputs".into(),
        ));
    }
    let oracle = GroupOracle::from_spec(spec);
    let mut graph = LabeledGraph::new(n, oracle.clone());

    let mut arcs: Vec<(&RawEdge, gfvs::GroupElement)> = Vec::new();
    for rec in &raw.edges {
        if rec.u >= n || rec.v >= n {
            return Err(parse_err(rec.line, format!("vertex out of range ({} vertices)", n)));
        }
        let Some(text) = &rec.label else {
            return Err(parse_err(rec.line, "labeled instances need a label on every edge/arc"));
        };
        let label = oracle
            .parse_element(text)
            .map_err(|e| parse_err(rec.line, e.to_string()))?;
        if rec.directed {
            arcs.push((rec, label));
        } else {
            graph
                .add_edge(rec.u, rec.v, label)
                .map_err(|e| parse_err(rec.line, e.to_string()))?;
        }
    }
    // Directed records: pair up explicit reverses, auto-invert the rest.
    let mut done = vec![false; arcs.len()];
    for i in 0..arcs.len() {
        if done[i] {
            continue;
        }
        let (rec, label) = (&arcs[i].0, arcs[i].1.clone());
        let reverse = (i + 1..arcs.len())
            .find(|&j| !done[j] && arcs[j].0.u == rec.v && arcs[j].0.v == rec.u);
        if let Some(j) = reverse {
            let expected = oracle.inv(&label)?;
            if !oracle.eq(&arcs[j].1, &expected) {
                return Err(parse_err(
                    arcs[j].0.line,
                    format!("pairing conflict: label of ({}, {}) is not the inverse", rec.v, rec.u),
                ));
            }
            done[j] = true;
        }
        graph
            .add_edge(rec.u, rec.v, label)
            .map_err(|e| parse_err(rec.line, e.to_string()))?;
        done[i] = true;
    }

    for &v in &raw.forbidden {
        if v >= n {
            return Err(CliError::Usage(format!("forbidden vertex {v} out of range")));
        }
    }
    Ok((GfvsInstance::new(graph, k), raw.forbidden.clone()))
}

/// Interpret the records as an unlabeled undirected multigraph.
fn to_unlabeled(raw: &RawInstance) -> CliResult<UndirectedGraph> {
    if raw.group.is_some() {
        return Err(CliError::Usage("unlabeled source inputs must not declare a group".into()));
    }
    let n = required(raw.vertices, "vertices")?;
    let mut graph = UndirectedGraph::new(n);
    for rec in &raw.edges {
        if rec.label.is_some() {
            return Err(parse_err(rec.line, "unlabeled source inputs must not carry labels"));
        }
        if rec.directed {
            return Err(parse_err(rec.line, "unlabeled source inputs use edge records only"));
        }
        graph.add_edge(rec.u, rec.v).map_err(|e| parse_err(rec.line, e.to_string()))?;
    }
    Ok(graph)
}

pub fn to_mwc(raw: &RawInstance) -> CliResult<gfvs::mwc::MwcInstance> {
    let graph = to_unlabeled(raw)?;
    let k = required(raw.param, "param")?;
    if !raw.forbidden.is_empty() || !raw.specials.is_empty() {
        return Err(CliError::Usage("multiway cut inputs take terminal records only".into()));
    }
    Ok(gfvs::mwc::MwcInstance::new(graph, raw.terminals.clone(), k)?)
}

/// Source problems accepted by `convert`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceKind {
    Fvs,
    Oct,
    Mwc,
    Esfvs,
}

pub fn convert_source(raw: &RawInstance, kind: SourceKind) -> CliResult<GfvsInstance> {
    let graph = to_unlabeled(raw)?;
    let k = required(raw.param, "param")?;
    if !raw.forbidden.is_empty() {
        return Err(CliError::Usage("forbidden records are not supported in source inputs".into()));
    }
    let needs = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(CliError::Usage(format!("{what} records do not apply to this source kind")))
        }
    };
    needs(raw.terminals.is_empty() || kind == SourceKind::Mwc, "terminal")?;
    needs(raw.specials.is_empty() || kind == SourceKind::Esfvs, "special")?;

    match kind {
        SourceKind::Fvs => Ok(gfvs::encode::encode_fvs(&graph, k)?),
        SourceKind::Oct => Ok(gfvs::encode::encode_oct(&graph, k)?),
        SourceKind::Mwc => Ok(gfvs::encode::encode_mwc(&graph, &raw.terminals, k)?),
        SourceKind::Esfvs => {
            // Each special record marks one not-yet-marked copy of (u, v).
            let mut special_idx: Vec<usize> = Vec::new();
            for &(u, v) in &raw.specials {
                let key = (u.min(v), u.max(v));
                let idx = graph
                    .edges()
                    .iter()
                    .enumerate()
                    .find(|(i, &e)| e == key && !special_idx.contains(i))
                    .map(|(i, _)| i)
                    .ok_or(gfvs::Error::MissingSpecialEdge(u, v))?;
                special_idx.push(idx);
            }
            let inst = EsfvsInstance::new(graph, special_idx, k)?;
            Ok(gfvs::encode::encode_esfvs(&inst)?)
        }
    }
}

/// Serialize a labeled instance; `parse_raw` + `to_gfvs` restore it
/// exactly. Edges are written once per pair in ascending order with the
/// low-to-high label.
pub fn write_gfvs(inst: &GfvsInstance) -> String {
    let graph = &inst.graph;
    let oracle = graph.oracle();
    assert_eq!(graph.alive_count(), graph.vertex_count(), "serializing a masked graph");
    let mut out = String::new();
    out.push_str(&format_group_spec(oracle.spec()));
    out.push('\n');
    out.push_str(&format!("vertices {}\n", graph.vertex_count()));
    out.push_str(&format!("param {}\n", inst.k));
    let mut edges: Vec<(usize, usize, String)> = graph
        .underlying_edges()
        .map(|(u, v, g)| (u, v, oracle.format_element(g)))
        .collect();
    edges.sort();
    for (u, v, label) in edges {
        out.push_str(&format!("edge {u} {v} {label}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_triangle_parses() {
        let text = "group cyclic 2\nvertices 3\nparam 1\nedge 0 1 1\nedge 1 2 1\nedge 2 0 1\n";
        let raw = parse_raw(text).unwrap();
        let (inst, forbidden) = to_gfvs(&raw).unwrap();
        assert_eq!(inst.k, 1);
        assert_eq!(inst.graph.vertex_count(), 3);
        assert_eq!(inst.graph.arc_count(), 6);
        assert!(forbidden.is_empty());
    }

    #[test]
    fn free_group_labels_parse() {
        let text = "group free\nvertices 2\nparam 0\nedge 0 1 g1\n";
        let raw = parse_raw(text).unwrap();
        let (inst, _) = to_gfvs(&raw).unwrap();
        let oracle = inst.graph.oracle();
        let g1 = oracle.parse_element("g1").unwrap();
        assert!(oracle.eq(inst.graph.label(0, 1).unwrap(), &g1));
        let back = oracle.parse_element("g1^").unwrap();
        assert!(oracle.eq(inst.graph.label(1, 0).unwrap(), &back));
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text = "# header\n\ngroup cyclic 3 # trailing\nvertices 2\nparam 0\nedge 0 1 2\n";
        let raw = parse_raw(text).unwrap();
        assert!(to_gfvs(&raw).is_ok());
    }

    #[test]
    fn arc_records_auto_invert_or_check() {
        let auto = "group cyclic 4\nvertices 2\nparam 0\narc 0 1 1\n";
        let (inst, _) = to_gfvs(&parse_raw(auto).unwrap()).unwrap();
        let oracle = inst.graph.oracle();
        assert!(oracle.eq(inst.graph.label(1, 0).unwrap(), &oracle.residue(3).unwrap()));

        let explicit = "group cyclic 4\nvertices 2\nparam 0\narc 0 1 1\narc 1 0 3\n";
        assert!(to_gfvs(&parse_raw(explicit).unwrap()).is_ok());

        let conflict = "group cyclic 4\nvertices 2\nparam 0\narc 0 1 1\narc 1 0 2\n";
        let err = to_gfvs(&parse_raw(conflict).unwrap()).unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 5, .. }), "{err}");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = "group cyclic 2\nvertices 2\nparam 0\nedge 0 5 1\n";
        let err = to_gfvs(&parse_raw(bad).unwrap()).unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 4, .. }));

        let unknown = "group wat 3\n";
        assert!(matches!(parse_raw(unknown), Err(CliError::Parse { line: 1, .. })));

        let bad_label = "group cyclic 2\nvertices 2\nparam 0\nedge 0 1 7\n";
        let err = to_gfvs(&parse_raw(bad_label).unwrap()).unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 4, .. }));
    }

    #[test]
    fn duplicate_edges_rejected() {
        let dup = "group cyclic 2\nvertices 2\nparam 0\nedge 0 1 1\nedge 1 0 1\n";
        assert!(to_gfvs(&parse_raw(dup).unwrap()).is_err());
    }

    #[test]
    fn serialization_round_trips() {
        let text = "group sym 3\nvertices 3\nparam 2\nedge 0 1 1 2 0\nedge 1 2 0 2 1\n";
        let (inst, _) = to_gfvs(&parse_raw(text).unwrap()).unwrap();
        let written = write_gfvs(&inst);
        let (again, _) = to_gfvs(&parse_raw(&written).unwrap()).unwrap();
        assert!(inst.graph.structurally_eq(&again.graph));
        assert_eq!(inst.k, again.k);
        assert_eq!(written, write_gfvs(&again));
    }

    #[test]
    fn unlabeled_sources_reject_labels_and_groups() {
        let labeled = "vertices 2\nparam 0\nedge 0 1 1\n";
        assert!(to_mwc(&parse_raw(labeled).unwrap()).is_err());
        let grouped = "group cyclic 2\nvertices 2\nparam 0\nedge 0 1\n";
        assert!(to_mwc(&parse_raw(grouped).unwrap()).is_err());
        let fine = "vertices 3\nparam 1\nedge 0 1\nedge 1 2\nterminal 0\nterminal 2\n";
        assert!(to_mwc(&parse_raw(fine).unwrap()).is_ok());
    }

    #[test]
    fn fvs_source_converts_with_all_edges_special() {
        let text = "vertices 3\nparam 1\nedge 0 1\nedge 1 2\nedge 2 0\n";
        let enc = convert_source(&parse_raw(text).unwrap(), SourceKind::Fvs).unwrap();
        assert!(!enc.graph.is_solution(&[]));
        assert!(enc.graph.is_solution(&[1]));
    }

    #[test]
    fn special_records_mark_parallel_copies_separately() {
        let text = "vertices 2\nparam 1\nedge 0 1\nedge 0 1\nspecial 0 1\nspecial 1 0\n";
        let raw = parse_raw(text).unwrap();
        let enc = convert_source(&raw, SourceKind::Esfvs).unwrap();
        // Both copies special: the 2-cycle is non-null.
        assert!(!enc.graph.is_solution(&[]));

        let over = "vertices 2\nparam 1\nedge 0 1\nspecial 0 1\nspecial 0 1\n";
        assert!(convert_source(&parse_raw(over).unwrap(), SourceKind::Esfvs).is_err());
    }
}
