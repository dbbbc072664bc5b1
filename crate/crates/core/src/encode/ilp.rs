use std::fmt::{self, Write as _};

use super::{all_edges, all_stars, encoded_pairs, EncodeConfig, Pattern};
use crate::cube::{for_each_shortest_path_interior, Vertex, VertexSet};
use crate::error::{Error, Result};
use crate::visibility::VariantKind;

/// A binary decision variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IlpVar {
    /// `x_v`; 1 iff `v ∈ M`.
    Vertex(Vertex),
    /// `z_{u,v,P}` for the `index`-th shortest `u,v`-path.
    Path { u: Vertex, v: Vertex, index: u32 },
}

impl IlpVar {
    pub fn name(&self) -> String {
        match self {
            IlpVar::Vertex(v) => format!("x_{v}"),
            IlpVar::Path { u, v, index } => format!("z_{u}_{v}_{index}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        })
    }
}

/// `Σ coef·var  sense  rhs`, with variables given by index into the model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearConstraint {
    pub name: String,
    pub terms: Vec<(usize, i64)>,
    pub sense: Sense,
    pub rhs: i64,
}

impl LinearConstraint {
    pub fn holds(&self, values: &[bool]) -> bool {
        let lhs: i64 = self
            .terms
            .iter()
            .map(|&(i, c)| if values[i] { c } else { 0 })
            .sum();
        match self.sense {
            Sense::Le => lhs <= self.rhs,
            Sense::Ge => lhs >= self.rhs,
            Sense::Eq => lhs == self.rhs,
        }
    }
}

/// Maximize `Σ x_v` over binary variables subject to linear rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IlpModel {
    pub h: u32,
    pub comment: String,
    pub vars: Vec<IlpVar>,
    pub constraints: Vec<LinearConstraint>,
}

impl IlpModel {
    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn count_paths(&self) -> usize {
        self.vars
            .iter()
            .filter(|v| matches!(v, IlpVar::Path { .. }))
            .count()
    }

    pub fn objective(&self, values: &[bool]) -> usize {
        self.vars
            .iter()
            .zip(values)
            .filter(|(v, &b)| b && matches!(v, IlpVar::Vertex(_)))
            .count()
    }

    /// Does a full assignment satisfy every row?
    pub fn is_feasible(&self, values: &[bool]) -> Result<bool> {
        if values.len() != self.vars.len() {
            return Err(Error::InvalidAssignment(format!(
                "assignment has {} values for {} variables",
                values.len(),
                self.vars.len()
            )));
        }
        Ok(self.constraints.iter().all(|c| c.holds(values)))
    }

    /// Extend `x_v = [v ∈ M]` by setting each `z_P` to 1 exactly when
    /// its path rows allow it. Every row only gains from a larger `z`
    /// except the path rows, so this completion is feasible whenever any is.
    pub fn complete(&self, m: &VertexSet) -> Result<Vec<bool>> {
        if m.dim() != self.h {
            return Err(Error::DimensionMismatch {
                left: self.h,
                right: m.dim(),
            });
        }
        let mut values: Vec<bool> = self
            .vars
            .iter()
            .map(|v| match v {
                IlpVar::Vertex(x) => m.contains(*x),
                IlpVar::Path { .. } => true,
            })
            .collect();
        for c in &self.constraints {
            if c.name.starts_with("path_") {
                let (z, x) = (c.terms[0].0, c.terms[1].0);
                if values[x] {
                    values[z] = false;
                }
            }
        }
        Ok(values)
    }

    /// Is `M` the vertex projection of some feasible assignment?
    pub fn admits(&self, m: &VertexSet) -> Result<bool> {
        let values = self.complete(m)?;
        self.is_feasible(&values)
    }

    /// CPLEX LP text.
    pub fn to_lp(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "\\ {}", self.comment);
        out.push_str("Maximize\n");
        let obj: Vec<(usize, i64)> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(_, v)| matches!(v, IlpVar::Vertex(_)))
            .map(|(i, _)| (i, 1))
            .collect();
        self.write_row(&mut out, "obj", &obj, None);
        out.push_str("Subject To\n");
        for c in &self.constraints {
            self.write_row(&mut out, &c.name, &c.terms, Some((c.sense, c.rhs)));
        }
        out.push_str("Binary\n");
        let mut line = String::new();
        for v in &self.vars {
            let name = v.name();
            if !line.is_empty() && line.len() + name.len() + 1 > 78 {
                let _ = writeln!(out, "{line}");
                line.clear();
            }
            line.push(' ');
            line.push_str(&name);
        }
        if !line.is_empty() {
            let _ = writeln!(out, "{line}");
        }
        out.push_str("End\n");
        out
    }

    fn write_row(
        &self,
        out: &mut String,
        name: &str,
        terms: &[(usize, i64)],
        tail: Option<(Sense, i64)>,
    ) {
        let mut line = format!(" {name}:");
        let mut first = true;
        let mut push = |line: &mut String, tok: String| {
            if line.len() + tok.len() + 1 > 78 {
                let _ = writeln!(out, "{line}");
                line.clear();
                line.push_str("   ");
            }
            line.push(' ');
            line.push_str(&tok);
        };
        for &(i, c) in terms {
            let sign = if c < 0 { "-" } else { "+" };
            let mag = c.unsigned_abs();
            let coef = if mag == 1 {
                String::new()
            } else {
                format!("{mag} ")
            };
            let tok = if first && c > 0 {
                format!("{coef}{}", self.vars[i].name())
            } else {
                format!("{sign} {coef}{}", self.vars[i].name())
            };
            first = false;
            push(&mut line, tok);
        }
        if let Some((sense, rhs)) = tail {
            push(&mut line, format!("{sense} {rhs}"));
        }
        let _ = writeln!(out, "{line}");
    }
}

/// Build the ILP model for `config`. The target size, if any, becomes a
/// `card` row `Σ x_v ≥ ℓ`.
pub fn emit_ilp(config: &EncodeConfig) -> Result<IlpModel> {
    config.validate()?;
    let h = config.h;
    let n = 1usize << h;
    let mut vars: Vec<IlpVar> = (0..n as u32)
        .map(|b| IlpVar::Vertex(Vertex::from_raw(b, h)))
        .collect();
    let mut rows = Vec::new();
    let x = |v: Vertex| v.bits() as usize;
    let row = |name: String, terms: Vec<(usize, i64)>, sense, rhs| LinearConstraint {
        name,
        terms,
        sense,
        rhs,
    };

    if config.variant == VariantKind::Total {
        for (u, v) in encoded_pairs(h, 2) {
            rows.push(row(
                format!("total_{u}_{v}"),
                vec![(x(u), 1), (x(v), 1)],
                Sense::Le,
                1,
            ));
        }
    } else {
        for (u, v) in encoded_pairs(h, config.path_cap) {
            let mut zs = Vec::new();
            let mut index = 0u32;
            for_each_shortest_path_interior(u, v, |interior| {
                let z = vars.len();
                vars.push(IlpVar::Path { u, v, index });
                zs.push(z);
                for (k, &w) in interior.iter().enumerate() {
                    rows.push(row(
                        format!("path_{u}_{v}_{index}_{k}"),
                        vec![(z, 1), (x(w), 1)],
                        Sense::Le,
                        1,
                    ));
                }
                index += 1;
            })?;
            let with_paths = |head: Vec<(usize, i64)>, zc: i64| {
                let mut t = head;
                t.extend(zs.iter().map(|&z| (z, zc)));
                t
            };
            match config.variant {
                VariantKind::Mutual | VariantKind::Dual => {
                    rows.push(row(
                        format!("vis_{u}_{v}"),
                        with_paths(vec![(x(u), 1), (x(v), 1)], -1),
                        Sense::Le,
                        1,
                    ));
                    if config.variant == VariantKind::Dual {
                        rows.push(row(
                            format!("dual_{u}_{v}"),
                            with_paths(vec![(x(u), -1), (x(v), -1)], -1),
                            Sense::Le,
                            -1,
                        ));
                    }
                }
                VariantKind::Outer => rows.push(row(
                    format!("outer_{u}_{v}"),
                    with_paths(vec![(x(u), 1), (x(v), 1)], -2),
                    Sense::Le,
                    0,
                )),
                VariantKind::Total => unreachable!(),
            }
        }
    }

    if let Some(ell) = config.target {
        rows.push(row(
            "card".into(),
            (0..n).map(|i| (i, 1)).collect(),
            Sense::Ge,
            ell as i64,
        ));
    }
    if let Some(p) = &config.presets {
        for v in p.iter() {
            rows.push(row(format!("preset_{v}"), vec![(x(v), 1)], Sense::Eq, 1));
        }
    }
    if config.antipode_closure {
        for b in 0..(n as u32 >> 1) {
            let u = Vertex::from_raw(b, h);
            let a = u.antipode();
            rows.push(row(
                format!("anti_{u}"),
                vec![(x(u), 1), (x(a), -1)],
                Sense::Eq,
                0,
            ));
        }
    }
    for pat in &config.forbidden {
        match pat {
            Pattern::AdjacentPair => {
                for (u, v) in all_edges(h) {
                    rows.push(row(
                        format!("adj_{u}_{v}"),
                        vec![(x(u), 1), (x(v), 1)],
                        Sense::Le,
                        1,
                    ));
                }
            }
            Pattern::K12Star => {
                for (c, a, b) in all_stars(h) {
                    rows.push(row(
                        format!("star_{c}_{a}_{b}"),
                        vec![(x(c), 1), (x(a), 1), (x(b), 1)],
                        Sense::Le,
                        2,
                    ));
                }
            }
        }
    }
    if let Some(cap) = config.neighborhood_cap {
        let big = h as i64 + 1;
        for c in 0..n as u32 {
            let center = Vertex::from_raw(c, h);
            let mut terms = vec![(x(center), 1 + big - cap as i64)];
            terms.extend(center.neighbors().map(|w| (x(w), 1)));
            rows.push(row(format!("nbhd_{center}"), terms, Sense::Le, big));
        }
    }
    Ok(IlpModel {
        h,
        comment: config.header(),
        vars,
        constraints: rows,
    })
}
