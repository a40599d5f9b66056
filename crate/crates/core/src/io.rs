//! Text formats. Every format numbers vertices from 1; lines starting with
//! `c` are comments. Parsers report the offending path and line.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ClassTag, Graph, Modulator, VertexSet};
use crate::nocert::{NoCertificate, NoCertificateSet};
use crate::oracle::{Color, ColorSet, Coloring, ListAssignment};
use crate::reductions::{CnfFormula, Encoding, ReductionOutput, Role};
use crate::treedepth::TreedepthDecomposition;

pub const FORMAT_VERSION: u32 = 1;

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes `text`, creating parent directories as needed.
pub fn write_text(path: &Path, text: &str) -> Result<()> {
    let io = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io)?;
    }
    fs::write(path, text).map_err(io)
}

/// Tokenized non-comment lines with their 1-based line numbers.
struct Source<'a> {
    path: PathBuf,
    lines: Vec<(usize, Vec<&'a str>)>,
    end: usize,
}

impl<'a> Source<'a> {
    fn new(text: &'a str, path: &Path) -> Self {
        let mut lines = Vec::new();
        let mut end = 0;
        for (i, line) in text.lines().enumerate() {
            end = i + 1;
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.is_empty() || tokens[0] == "c" || tokens[0].starts_with('%') {
                continue;
            }
            lines.push((i + 1, tokens));
        }
        Source {
            path: path.to_path_buf(),
            lines,
            end,
        }
    }

    fn err(&self, line: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            path: self.path.clone(),
            line,
            message: message.into(),
        }
    }

    fn num<T: FromStr>(&self, line: usize, token: &str, what: &str) -> Result<T> {
        token
            .parse()
            .map_err(|_| self.err(line, format!("expected {what}, found '{token}'")))
    }

    /// A 1-based vertex id converted to 0-based.
    fn vertex(&self, line: usize, token: &str, n: usize) -> Result<usize> {
        let v: usize = self.num(line, token, "a vertex")?;
        if v == 0 || v > n {
            return Err(self.err(line, format!("vertex {v} outside 1..={n}")));
        }
        Ok(v - 1)
    }

    fn color(&self, line: usize, token: &str, q: u32) -> Result<Color> {
        let c: Color = self.num(line, token, "a color")?;
        if c == 0 || c > q {
            return Err(self.err(line, format!("color {c} outside 1..={q}")));
        }
        Ok(c)
    }

    /// Splits off the `p <kind> ...` header, which must precede every
    /// other record; returns its fields after the kind.
    fn header(&mut self, kinds: &[&str], required: bool) -> Result<Option<(usize, Vec<&'a str>)>> {
        match self.lines.first() {
            Some((line, tokens)) if tokens[0] == "p" => {
                let line = *line;
                if tokens.len() < 2 || !kinds.contains(&tokens[1]) {
                    return Err(self.err(
                        line,
                        format!("expected header 'p {}'", kinds.join("|")),
                    ));
                }
                let fields = tokens[2..].to_vec();
                self.lines.remove(0);
                if let Some((dup, _)) = self.lines.iter().find(|(_, t)| t[0] == "p") {
                    return Err(self.err(*dup, "second header line"));
                }
                Ok(Some((line, fields)))
            }
            _ if required => Err(self.err(
                self.lines.first().map_or(self.end.max(1), |l| l.0),
                format!("missing header 'p {}'", kinds[0]),
            )),
            _ => Ok(None),
        }
    }

    fn arity(&self, line: usize, tokens: &[&str], min: usize, max: usize) -> Result<()> {
        if tokens.len() < min || tokens.len() > max {
            return Err(self.err(line, format!("'{}' line has {} fields", tokens[0], tokens.len())));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------- graphs

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

/// DIMACS graph: `p edge n m` (or `p col`), then `e u v` lines.
pub fn parse_graph(text: &str, path: &Path) -> Result<Graph> {
    let mut src = Source::new(text, path);
    let (hline, h) = src.header(&["edge", "col"], true)?.expect("required header");
    src.arity(hline, &h, 2, 2).map_err(|_| src.err(hline, "header must be 'p edge <n> <m>'"))?;
    let n: usize = src.num(hline, h[0], "vertex count")?;
    let m: usize = src.num(hline, h[1], "edge count")?;
    let mut edges = Vec::with_capacity(m);
    for (line, t) in &src.lines {
        if t[0] != "e" {
            return Err(src.err(*line, format!("unexpected record '{}'", t[0])));
        }
        src.arity(*line, t, 3, 3)?;
        let u = src.vertex(*line, t[1], n)?;
        let v = src.vertex(*line, t[2], n)?;
        if u == v {
            return Err(src.err(*line, format!("self-loop at vertex {}", u + 1)));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(src.err(hline, format!("header declares {m} edges, found {}", edges.len())));
    }
    Graph::from_edges(n, edges).map_err(|e| src.err(hline, e.to_string()))
}

// ---------------------------------------------------------------- lists

fn list_line(out: &mut String, tag: &str, v: usize, list: ColorSet) {
    let _ = write!(out, "{tag} {}", v + 1);
    for c in list.iter() {
        let _ = write!(out, " {c}");
    }
    out.push('\n');
}

pub fn write_lists(lists: &ListAssignment) -> String {
    let mut out = format!("p lists {} {}\n", lists.len(), lists.q());
    for (v, &list) in lists.lists().iter().enumerate() {
        list_line(&mut out, "l", v, list);
    }
    out
}

/// `p lists n q`, then `l v c1 c2 ...`; a vertex without a line gets the
/// full list `[q]`.
pub fn parse_lists(text: &str, path: &Path) -> Result<ListAssignment> {
    let mut src = Source::new(text, path);
    let (hline, h) = src.header(&["lists"], true)?.expect("required header");
    src.arity(hline, &h, 2, 2).map_err(|_| src.err(hline, "header must be 'p lists <n> <q>'"))?;
    let n: usize = src.num(hline, h[0], "vertex count")?;
    let q: u32 = src.num(hline, h[1], "palette size")?;
    let mut sets: Vec<Option<ColorSet>> = vec![None; n];
    for (line, t) in &src.lines {
        if t[0] != "l" || t.len() < 2 {
            return Err(src.err(*line, format!("unexpected record '{}'", t.join(" "))));
        }
        let v = src.vertex(*line, t[1], n)?;
        if sets[v].is_some() {
            return Err(src.err(*line, format!("second list for vertex {}", v + 1)));
        }
        let mut set = ColorSet::EMPTY;
        for tok in &t[2..] {
            set.insert(src.color(*line, tok, q)?);
        }
        sets[v] = Some(set);
    }
    let full = ColorSet::full(q);
    ListAssignment::new(q, sets.into_iter().map(|s| s.unwrap_or(full)).collect())
        .map_err(|e| src.err(hline, e.to_string()))
}

// ---------------------------------------------------------------- modulators

pub fn write_modulator(m: &Modulator) -> String {
    let mut out = format!(
        "p modulator {} {} {}\n",
        m.vertices.universe(),
        m.size(),
        m.target
    );
    for v in m.vertices.iter() {
        let _ = writeln!(out, "x {}", v + 1);
    }
    out
}

/// `p modulator n k [class]`, then one `x v` line per vertex. The class is
/// `None` when the header omits it.
pub fn parse_modulator(text: &str, path: &Path) -> Result<(VertexSet, Option<ClassTag>)> {
    let mut src = Source::new(text, path);
    let (hline, h) = src.header(&["modulator"], true)?.expect("required header");
    src.arity(hline, &h, 2, 3)
        .map_err(|_| src.err(hline, "header must be 'p modulator <n> <k> [class]'"))?;
    let n: usize = src.num(hline, h[0], "vertex count")?;
    let k: usize = src.num(hline, h[1], "modulator size")?;
    let tag = match h.get(2) {
        Some(s) => Some(s.parse::<ClassTag>().map_err(|e| src.err(hline, e.to_string()))?),
        None => None,
    };
    let mut set = VertexSet::new(n);
    for (line, t) in &src.lines {
        if t[0] != "x" {
            return Err(src.err(*line, format!("unexpected record '{}'", t[0])));
        }
        src.arity(*line, t, 2, 2)?;
        let v = src.vertex(*line, t[1], n)?;
        if !set.insert(v) {
            return Err(src.err(*line, format!("vertex {} listed twice", v + 1)));
        }
    }
    if set.len() != k {
        return Err(src.err(hline, format!("header declares {k} vertices, found {}", set.len())));
    }
    Ok((set, tag))
}

// ---------------------------------------------------------------- colorings

pub fn write_coloring(coloring: &Coloring, q: u32) -> String {
    let mut out = format!("p coloring {} {q}\n", coloring.len());
    for (v, c) in coloring.colors().iter().enumerate() {
        let _ = writeln!(out, "v {} {c}", v + 1);
    }
    out
}

/// `p coloring n q`, then `v v c` for every vertex.
pub fn parse_coloring(text: &str, path: &Path) -> Result<(Coloring, u32)> {
    let mut src = Source::new(text, path);
    let (hline, h) = src.header(&["coloring"], true)?.expect("required header");
    src.arity(hline, &h, 2, 2).map_err(|_| src.err(hline, "header must be 'p coloring <n> <q>'"))?;
    let n: usize = src.num(hline, h[0], "vertex count")?;
    let q: u32 = src.num(hline, h[1], "palette size")?;
    let mut colors: Vec<Option<Color>> = vec![None; n];
    for (line, t) in &src.lines {
        if t[0] != "v" {
            return Err(src.err(*line, format!("unexpected record '{}'", t[0])));
        }
        src.arity(*line, t, 3, 3)?;
        let v = src.vertex(*line, t[1], n)?;
        if colors[v].is_some() {
            return Err(src.err(*line, format!("second color for vertex {}", v + 1)));
        }
        colors[v] = Some(src.color(*line, t[2], q)?);
    }
    let colors = colors
        .into_iter()
        .enumerate()
        .map(|(v, c)| c.ok_or_else(|| src.err(hline, format!("vertex {} has no color", v + 1))))
        .collect::<Result<Vec<_>>>()?;
    Ok((Coloring(colors), q))
}

// ---------------------------------------------------------------- decompositions

pub fn write_decomposition(dec: &TreedepthDecomposition) -> String {
    let mut out = format!("p decomposition {} {}\n", dec.len(), dec.depth());
    for (v, p) in dec.parents().iter().enumerate() {
        let _ = writeln!(out, "t {} {}", v + 1, p.map_or(0, |p| p + 1));
    }
    out
}

/// Optional `p decomposition n [depth]` header, then `t v parent` for every
/// vertex, parent `0` marking a root. Without a header the vertex count is
/// the number of `t` lines.
pub fn parse_decomposition(text: &str, path: &Path) -> Result<TreedepthDecomposition> {
    let mut src = Source::new(text, path);
    let header = src.header(&["decomposition"], false)?;
    let (hline, n, depth) = match &header {
        Some((line, h)) => {
            src.arity(*line, h, 1, 2)
                .map_err(|_| src.err(*line, "header must be 'p decomposition <n> [depth]'"))?;
            let depth = match h.get(1) {
                Some(tok) => Some(src.num::<usize>(*line, tok, "depth")?),
                None => None,
            };
            (*line, src.num(*line, h[0], "vertex count")?, depth)
        }
        None => (1, src.lines.len(), None),
    };
    let mut parent: Vec<Option<Option<usize>>> = vec![None; n];
    for (line, t) in &src.lines {
        if t[0] != "t" {
            return Err(src.err(*line, format!("unexpected record '{}'", t[0])));
        }
        src.arity(*line, t, 3, 3)?;
        let v = src.vertex(*line, t[1], n)?;
        let p = match t[2] {
            "0" => None,
            tok => Some(src.vertex(*line, tok, n)?),
        };
        if parent[v].replace(p).is_some() {
            return Err(src.err(*line, format!("second parent for vertex {}", v + 1)));
        }
    }
    let parent = parent
        .into_iter()
        .enumerate()
        .map(|(v, p)| p.ok_or_else(|| src.err(hline, format!("vertex {} has no parent line", v + 1))))
        .collect::<Result<Vec<_>>>()?;
    let dec = TreedepthDecomposition::new(parent).map_err(|e| src.err(hline, e.to_string()))?;
    if let Some(d) = depth.filter(|&d| d != dec.depth()) {
        return Err(src.err(hline, format!("header declares depth {d}, forest has depth {}", dec.depth())));
    }
    Ok(dec)
}

// ---------------------------------------------------------------- CNF

pub fn write_cnf(f: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", f.num_vars(), f.clauses().len());
    for clause in f.clauses() {
        for lit in clause {
            let _ = write!(out, "{lit} ");
        }
        out.push_str("0\n");
    }
    out
}

/// DIMACS CNF. Clauses end with `0` and may span lines; a trailing clause
/// without its `0` is accepted.
pub fn parse_cnf(text: &str, path: &Path) -> Result<CnfFormula> {
    let mut src = Source::new(text, path);
    let (hline, h) = src.header(&["cnf"], true)?.expect("required header");
    src.arity(hline, &h, 2, 2).map_err(|_| src.err(hline, "header must be 'p cnf <n> <m>'"))?;
    let n: usize = src.num(hline, h[0], "variable count")?;
    let m: usize = src.num(hline, h[1], "clause count")?;
    let mut clauses = Vec::with_capacity(m);
    let mut current = Vec::new();
    for (line, t) in &src.lines {
        for tok in t {
            let lit: i32 = src.num(*line, tok, "a literal")?;
            if lit == 0 {
                if current.is_empty() {
                    return Err(src.err(*line, "empty clause"));
                }
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > n {
                return Err(src.err(*line, format!("literal {lit} outside 1..={n}")));
            } else {
                current.push(lit);
            }
        }
    }
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != m {
        return Err(src.err(hline, format!("header declares {m} clauses, found {}", clauses.len())));
    }
    CnfFormula::new(n, clauses).map_err(|e| src.err(hline, e.to_string()))
}

// ---------------------------------------------------------------- No-certificate sets

pub fn write_zeta(set: &NoCertificateSet) -> String {
    let mut out = format!(
        "p zeta {} {} {} {}{}\n",
        set.tag,
        set.q,
        set.g,
        set.len(),
        if set.minimal_only { " minimal" } else { "" }
    );
    for member in &set.members {
        let _ = writeln!(out, "h {}", member.graph.vertex_count());
        for (u, v) in member.graph.edges() {
            let _ = writeln!(out, "e {} {}", u + 1, v + 1);
        }
        for (v, &list) in member.lists.lists().iter().enumerate() {
            list_line(&mut out, "l", v, list);
        }
    }
    out
}

/// `p zeta class q g count [minimal]`, then per member an `h nv` line
/// followed by its `e u v` and `l v c...` lines (vertices local to the
/// member). Members keep file order.
pub fn parse_zeta(text: &str, path: &Path) -> Result<NoCertificateSet> {
    let mut src = Source::new(text, path);
    let (hline, h) = src.header(&["zeta"], true)?.expect("required header");
    src.arity(hline, &h, 4, 5)
        .map_err(|_| src.err(hline, "header must be 'p zeta <class> <q> <g> <count> [minimal]'"))?;
    let tag: ClassTag = h[0].parse().map_err(|e: Error| src.err(hline, e.to_string()))?;
    let q: u32 = src.num(hline, h[1], "palette size")?;
    let g: usize = src.num(hline, h[2], "certificate order")?;
    let count: usize = src.num(hline, h[3], "member count")?;
    let minimal_only = match h.get(4) {
        None => false,
        Some(&"minimal") => true,
        Some(other) => return Err(src.err(hline, format!("unknown flag '{other}'"))),
    };

    struct Partial {
        line: usize,
        n: usize,
        edges: Vec<(usize, usize)>,
        lists: Vec<Option<ColorSet>>,
    }
    let mut partials: Vec<Partial> = Vec::new();
    for (line, t) in &src.lines {
        match t[0] {
            "h" => {
                src.arity(*line, t, 2, 2)?;
                let n: usize = src.num(*line, t[1], "member order")?;
                if n > g {
                    return Err(src.err(*line, format!("member has {n} vertices, g = {g}")));
                }
                partials.push(Partial {
                    line: *line,
                    n,
                    edges: Vec::new(),
                    lists: vec![None; n],
                });
            }
            "e" | "l" => {
                let Some(cur) = partials.last_mut() else {
                    return Err(src.err(*line, "record before the first 'h' line"));
                };
                if t[0] == "e" {
                    src.arity(*line, t, 3, 3)?;
                    let u = src.vertex(*line, t[1], cur.n)?;
                    let v = src.vertex(*line, t[2], cur.n)?;
                    cur.edges.push((u, v));
                } else {
                    src.arity(*line, t, 2, 2 + q as usize)?;
                    let v = src.vertex(*line, t[1], cur.n)?;
                    let mut set = ColorSet::EMPTY;
                    for tok in &t[2..] {
                        set.insert(src.color(*line, tok, q)?);
                    }
                    if cur.lists[v].replace(set).is_some() {
                        return Err(src.err(*line, format!("second list for vertex {}", v + 1)));
                    }
                }
            }
            other => return Err(src.err(*line, format!("unexpected record '{other}'"))),
        }
    }
    if partials.len() != count {
        return Err(src.err(hline, format!("header declares {count} members, found {}", partials.len())));
    }
    let mut members = Vec::with_capacity(count);
    for p in partials {
        let graph = Graph::from_edges(p.n, p.edges).map_err(|e| src.err(p.line, e.to_string()))?;
        let full = ColorSet::full(q);
        let lists = ListAssignment::new(q, p.lists.into_iter().map(|l| l.unwrap_or(full)).collect())
            .map_err(|e| src.err(p.line, e.to_string()))?;
        members.push(NoCertificate { graph, lists });
    }
    Ok(NoCertificateSet {
        tag,
        q,
        g,
        minimal_only,
        members,
    })
}

// ---------------------------------------------------------------- reduction metadata

/// Contents of a reduction's JSON-lines meta file: a header line, then one
/// line per vertex with its role.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Meta {
    pub q: u32,
    pub class: ClassTag,
    /// 0-based, ascending.
    pub modulator: Vec<usize>,
    pub encoding: Encoding,
    pub roles: Vec<Role>,
}

impl Meta {
    pub fn of(out: &ReductionOutput) -> Meta {
        Meta {
            q: out.lists.q(),
            class: out.modulator.target,
            modulator: out.modulator.vertices.to_vec(),
            encoding: out.encoding.clone(),
            roles: out.roles.clone(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MetaHeader {
    format: u32,
    vertices: usize,
    q: u32,
    class: ClassTag,
    modulator: Vec<usize>,
    encoding: Encoding,
}

#[derive(Serialize, Deserialize)]
struct MetaVertex {
    vertex: usize,
    #[serde(flatten)]
    role: Role,
}

pub fn write_meta(meta: &Meta) -> String {
    let header = MetaHeader {
        format: FORMAT_VERSION,
        vertices: meta.roles.len(),
        q: meta.q,
        class: meta.class,
        modulator: meta.modulator.iter().map(|v| v + 1).collect(),
        encoding: meta.encoding.clone(),
    };
    let mut out = serde_json::to_string(&header).expect("meta header serializes");
    out.push('\n');
    for (v, role) in meta.roles.iter().enumerate() {
        let line = MetaVertex {
            vertex: v + 1,
            role: role.clone(),
        };
        out.push_str(&serde_json::to_string(&line).expect("role serializes"));
        out.push('\n');
    }
    out
}

pub fn parse_meta(text: &str, path: &Path) -> Result<Meta> {
    let err = |line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, first) = lines.next().ok_or_else(|| err(1, "empty meta file".into()))?;
    let header: MetaHeader = serde_json::from_str(first).map_err(|e| err(hline, e.to_string()))?;
    if header.format != FORMAT_VERSION {
        return Err(err(hline, format!("unsupported meta format {}", header.format)));
    }
    let mut roles: Vec<Option<Role>> = vec![None; header.vertices];
    for (line, text) in lines {
        let rec: MetaVertex = serde_json::from_str(text).map_err(|e| err(line, e.to_string()))?;
        if rec.vertex == 0 || rec.vertex > header.vertices {
            return Err(err(line, format!("vertex {} outside 1..={}", rec.vertex, header.vertices)));
        }
        if roles[rec.vertex - 1].replace(rec.role).is_some() {
            return Err(err(line, format!("second role for vertex {}", rec.vertex)));
        }
    }
    let roles = roles
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or_else(|| err(hline, format!("vertex {} has no role", v + 1))))
        .collect::<Result<Vec<_>>>()?;
    let mut modulator = Vec::with_capacity(header.modulator.len());
    for v in header.modulator {
        if v == 0 || v > header.vertices {
            return Err(err(hline, format!("modulator vertex {v} outside 1..={}", header.vertices)));
        }
        modulator.push(v - 1);
    }
    modulator.sort_unstable();
    Ok(Meta {
        q: header.q,
        class: header.class,
        modulator,
        encoding: header.encoding,
        roles,
    })
}

// ---------------------------------------------------------------- file helpers

pub fn load_graph(path: &Path) -> Result<Graph> {
    parse_graph(&read_text(path)?, path)
}

pub fn load_lists(path: &Path) -> Result<ListAssignment> {
    parse_lists(&read_text(path)?, path)
}

pub fn load_modulator(path: &Path) -> Result<(VertexSet, Option<ClassTag>)> {
    parse_modulator(&read_text(path)?, path)
}

pub fn load_coloring(path: &Path) -> Result<(Coloring, u32)> {
    parse_coloring(&read_text(path)?, path)
}

pub fn load_decomposition(path: &Path) -> Result<TreedepthDecomposition> {
    parse_decomposition(&read_text(path)?, path)
}

pub fn load_cnf(path: &Path) -> Result<CnfFormula> {
    parse_cnf(&read_text(path)?, path)
}

pub fn load_zeta(path: &Path) -> Result<NoCertificateSet> {
    parse_zeta(&read_text(path)?, path)
}

pub fn load_meta(path: &Path) -> Result<Meta> {
    parse_meta(&read_text(path)?, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> &'static Path {
        Path::new("t")
    }

    fn parse_line(e: Error) -> usize {
        match e {
            Error::Parse { line, .. } => line,
            other => panic!("expected a parse error, got {other}"),
        }
    }

    #[test]
    fn graph_round_trip_and_comments() {
        let g = Graph::petersen();
        assert_eq!(parse_graph(&write_graph(&g), p()).unwrap(), g);
        let text = "c triangle\np edge 3 3\ne 1 2\n\ne 2 3\nc mid\ne 1 3\n";
        assert_eq!(parse_graph(text, p()).unwrap(), Graph::complete(3));
    }

    #[test]
    fn graph_errors_carry_lines() {
        assert_eq!(parse_line(parse_graph("p edge 2 1\ne 1 3\n", p()).unwrap_err()), 2);
        assert_eq!(parse_line(parse_graph("p edge 2 2\ne 1 2\n", p()).unwrap_err()), 1);
        assert_eq!(parse_line(parse_graph("e 1 2\n", p()).unwrap_err()), 1);
        assert_eq!(parse_line(parse_graph("p edge 2 1\ne 1 1\n", p()).unwrap_err()), 2);
    }

    #[test]
    fn missing_list_lines_mean_full_lists() {
        let lists = parse_lists("p lists 3 3\nl 2 1 3\n", p()).unwrap();
        assert_eq!(lists.list(0), ColorSet::full(3));
        assert_eq!(lists.list(1).iter().collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(parse_lists(&write_lists(&lists), p()).unwrap(), lists);
        assert_eq!(parse_line(parse_lists("p lists 3 3\nl 2 4\n", p()).unwrap_err()), 2);
    }

    #[test]
    fn modulator_round_trip() {
        let set = VertexSet::from_vertices(5, vec![0, 3]).unwrap();
        let m = Modulator::new(set.clone(), ClassTag::UnionSplit);
        assert_eq!(parse_modulator(&write_modulator(&m), p()).unwrap(), (set.clone(), Some(ClassTag::UnionSplit)));
        assert_eq!(parse_modulator("p modulator 5 2\nx 1\nx 4\n", p()).unwrap(), (set, None));
        assert!(parse_modulator("p modulator 5 2\nx 1\nx 1\n", p()).is_err());
    }

    #[test]
    fn coloring_and_decomposition_round_trip() {
        let c = Coloring(vec![1, 3, 2]);
        assert_eq!(parse_coloring(&write_coloring(&c, 3), p()).unwrap(), (c, 3));
        assert!(parse_coloring("p coloring 2 3\nv 1 1\n", p()).is_err());
        let dec = TreedepthDecomposition::new(vec![None, Some(0), Some(1), Some(0)]).unwrap();
        assert_eq!(parse_decomposition(&write_decomposition(&dec), p()).unwrap(), dec);
        assert_eq!(parse_decomposition("t 1 0\nt 2 1\n", p()).unwrap().depth(), 2);
        assert!(parse_decomposition("t 1 2\nt 2 1\n", p()).is_err());
    }

    #[test]
    fn cnf_parsing() {
        let f = parse_cnf("c x\np cnf 3 2\n1 -2\n 3 0 -1 0\n", p()).unwrap();
        assert_eq!(f.clauses(), &[vec![1, -2, 3], vec![-1]]);
        assert_eq!(parse_cnf(&write_cnf(&f), p()).unwrap(), f);
        assert_eq!(parse_line(parse_cnf("p cnf 2 1\n1 4 0\n", p()).unwrap_err()), 2);
    }

    #[test]
    fn zeta_round_trip() {
        let set = crate::nocert::build_certificate_set(ClassTag::LinearForest, 2, 3, false).unwrap();
        assert!(!set.is_empty());
        assert_eq!(parse_zeta(&write_zeta(&set), p()).unwrap(), set);
    }

    #[test]
    fn meta_round_trip() {
        let f = CnfFormula::new(2, vec![vec![1, -2]]).unwrap();
        let out = crate::reductions::reduce_3sat(&f, 2).unwrap();
        let meta = Meta::of(&out);
        let text = write_meta(&meta);
        assert!(text.lines().nth(1).unwrap().contains("\"role\":\"variable\""));
        assert_eq!(parse_meta(&text, p()).unwrap(), meta);
    }
}
