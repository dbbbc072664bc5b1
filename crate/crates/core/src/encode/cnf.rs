use std::fmt::Write as _;

use crate::cube::{Vertex, VertexSet};
use crate::error::{Error, Result};

/// What a CNF variable stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarRole {
    /// `x_v`; false iff `v ∈ M`.
    Vertex(Vertex),
    /// `y_P` for the `index`-th shortest `u,v`-path.
    Path { u: Vertex, v: Vertex, index: u32 },
    /// Register `s_{i,j}` of the global cardinality counter.
    Counter { i: u32, j: u32 },
    /// Register of the counter bounding `|M ∩ N[center]|`.
    Neighborhood { center: Vertex, i: u32, j: u32 },
    /// Unknown (e.g. read from a foreign DIMACS file).
    Aux,
}

impl VarRole {
    fn tag(&self) -> &'static str {
        match self {
            VarRole::Vertex(_) => "x",
            VarRole::Path { .. } => "path",
            VarRole::Counter { .. } => "counter",
            VarRole::Neighborhood { .. } => "neighborhood",
            VarRole::Aux => "aux",
        }
    }
}

/// Clause database over DIMACS literals with a variable map.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CnfFormula {
    roles: Vec<VarRole>,
    lits: Vec<i32>,
    starts: Vec<usize>,
    comments: Vec<String>,
}

impl CnfFormula {
    pub fn new() -> Self {
        CnfFormula {
            starts: vec![0],
            ..Default::default()
        }
    }

    pub fn num_vars(&self) -> u32 {
        self.roles.len() as u32
    }

    pub fn num_clauses(&self) -> usize {
        self.starts.len() - 1
    }

    pub fn new_var(&mut self, role: VarRole) -> i32 {
        self.roles.push(role);
        self.roles.len() as i32
    }

    /// Allocate `n` consecutive variables; returns the first.
    pub(crate) fn new_vars(&mut self, n: u32, role: impl Fn(u32) -> VarRole) -> i32 {
        let first = self.roles.len() as i32 + 1;
        for k in 0..n {
            self.roles.push(role(k));
        }
        first
    }

    pub fn role(&self, var: u32) -> Option<VarRole> {
        self.roles.get(var as usize - 1).copied()
    }

    pub fn roles(&self) -> &[VarRole] {
        &self.roles
    }

    pub fn add_clause(&mut self, clause: &[i32]) {
        debug_assert!(!clause.is_empty(), "empty clause at emission");
        debug_assert!(clause
            .iter()
            .all(|&l| l != 0 && l.unsigned_abs() <= self.num_vars()));
        self.lits.extend_from_slice(clause);
        self.starts.push(self.lits.len());
    }

    pub fn clause(&self, i: usize) -> &[i32] {
        &self.lits[self.starts[i]..self.starts[i + 1]]
    }

    pub fn clauses(&self) -> impl Iterator<Item = &[i32]> + '_ {
        self.starts.windows(2).map(move |w| &self.lits[w[0]..w[1]])
    }

    pub fn add_comment(&mut self, c: impl Into<String>) {
        self.comments.push(c.into());
    }

    pub fn comments(&self) -> &[String] {
        &self.comments
    }

    /// Dimension of the cube the vertex variables live in.
    pub fn dim(&self) -> Option<u32> {
        self.roles.iter().find_map(|r| match r {
            VarRole::Vertex(v) => Some(v.dim()),
            _ => None,
        })
    }

    /// Variables that stand for vertices, with their vertex.
    pub fn vertex_vars(&self) -> impl Iterator<Item = (u32, Vertex)> + '_ {
        self.roles.iter().enumerate().filter_map(|(i, r)| match r {
            VarRole::Vertex(v) => Some((i as u32 + 1, *v)),
            _ => None,
        })
    }

    pub fn count_role(&self, pred: impl Fn(&VarRole) -> bool) -> usize {
        self.roles.iter().filter(|r| pred(r)).count()
    }

    /// `Ok` iff `assignment` (indexed by `var − 1`) satisfies every clause.
    pub fn check_assignment(&self, assignment: &[bool]) -> Result<()> {
        if assignment.len() != self.roles.len() {
            return Err(Error::InvalidAssignment(format!(
                "assignment has {} values for {} variables",
                assignment.len(),
                self.roles.len()
            )));
        }
        for (i, c) in self.clauses().enumerate() {
            let sat = c
                .iter()
                .any(|&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0));
            if !sat {
                return Err(Error::InvalidAssignment(format!(
                    "clause {} is falsified",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    /// DIMACS text. Vertex variables are listed as `c x <var> <vertex>`;
    /// other roles as `c vars <first>-<last> <role>` ranges.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            let _ = writeln!(out, "c {c}");
        }
        let mut i = 0;
        while i < self.roles.len() {
            match self.roles[i] {
                VarRole::Vertex(v) => {
                    let _ = writeln!(out, "c x {} {}", i + 1, v);
                    i += 1;
                }
                r => {
                    let mut j = i;
                    while j + 1 < self.roles.len() && self.roles[j + 1].tag() == r.tag() {
                        j += 1;
                    }
                    let _ = writeln!(out, "c vars {}-{} {}", i + 1, j + 1, r.tag());
                    i = j + 1;
                }
            }
        }
        let _ = writeln!(out, "p cnf {} {}", self.num_vars(), self.num_clauses());
        for c in self.clauses() {
            for l in c {
                let _ = write!(out, "{l} ");
            }
            out.push_str("0\n");
        }
        out
    }

    /// Parse DIMACS, recovering vertex roles from `c x` comments.
    pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
        let mut f = CnfFormula::new();
        let mut declared: Option<(u32, usize)> = None;
        let mut vertex_roles: Vec<(u32, Vertex)> = Vec::new();
        let mut current: Vec<i32> = Vec::new();
        let mut clauses: Vec<Vec<i32>> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let bad = |msg: String| Error::Parse { line: i + 1, msg };
            if line.is_empty() || line.starts_with('%') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('c') {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                if toks.len() == 3 && toks[0] == "x" {
                    let var: u32 = toks[1].parse().map_err(|_| bad("bad x comment".into()))?;
                    let v: Vertex = toks[2]
                        .parse()
                        .map_err(|_| bad("bad vertex in x comment".into()))?;
                    vertex_roles.push((var, v));
                } else if !toks.first().is_some_and(|t| *t == "vars") {
                    f.comments.push(rest.trim().to_string());
                }
                continue;
            }
            if let Some(rest) = line.strip_prefix("p ") {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                if toks.len() != 3 || toks[0] != "cnf" {
                    return Err(bad(format!("malformed header {line:?}")));
                }
                let nv = toks[1]
                    .parse()
                    .map_err(|_| bad("bad variable count".into()))?;
                let nc = toks[2]
                    .parse()
                    .map_err(|_| bad("bad clause count".into()))?;
                declared = Some((nv, nc));
                continue;
            }
            let (nv, _) = declared.ok_or_else(|| bad("clause before header".into()))?;
            for tok in line.split_whitespace() {
                let l: i32 = tok
                    .parse()
                    .map_err(|_| bad(format!("bad literal {tok:?}")))?;
                if l == 0 {
                    clauses.push(std::mem::take(&mut current));
                } else {
                    if l.unsigned_abs() > nv {
                        return Err(bad(format!("literal {l} exceeds {nv} variables")));
                    }
                    current.push(l);
                }
            }
        }
        let (nv, nc) = declared.ok_or_else(|| Error::Parse {
            line: 0,
            msg: "missing p cnf header".into(),
        })?;
        if !current.is_empty() {
            clauses.push(current);
        }
        if clauses.len() != nc {
            return Err(Error::Parse {
                line: 0,
                msg: format!("header declares {nc} clauses, found {}", clauses.len()),
            });
        }
        f.roles = vec![VarRole::Aux; nv as usize];
        for (var, v) in vertex_roles {
            if var == 0 || var > nv {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("vertex comment names variable {var} outside 1..={nv}"),
                });
            }
            f.roles[var as usize - 1] = VarRole::Vertex(v);
        }
        for c in clauses {
            f.lits.extend_from_slice(&c);
            f.starts.push(f.lits.len());
        }
        Ok(f)
    }
}

/// `M = {v : x_v = false}` from a satisfying assignment.
pub fn decode_model(formula: &CnfFormula, assignment: &[bool]) -> Result<VertexSet> {
    formula.check_assignment(assignment)?;
    let dim = formula
        .dim()
        .ok_or_else(|| Error::InvalidAssignment("formula has no vertex variables".into()))?;
    let mut m = VertexSet::new(dim)?;
    for (var, v) in formula.vertex_vars() {
        if !assignment[var as usize - 1] {
            m.insert(v);
        }
    }
    Ok(m)
}
