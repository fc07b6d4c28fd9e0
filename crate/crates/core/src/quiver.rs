//! Quivers, dimension vectors and representations.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, Field};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QArrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// Finite quiver with named vertices and arrows. Loops are rejected.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<QArrow>,
}

impl Quiver {
    /// Arrows are `(name, source, target)` by vertex name.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex `{v}`")));
            }
        }
        let index = |name: &str| {
            vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::UnknownVertex(name.to_string()))
        };
        let mut out = Vec::with_capacity(arrows.len());
        for (name, s, t) in arrows {
            let name = name.as_ref().to_string();
            if out.iter().any(|a: &QArrow| a.name == name) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow `{name}`")));
            }
            let (source, target) = (index(s.as_ref())?, index(t.as_ref())?);
            if source == target {
                return Err(Error::InvalidQuiver(format!("arrow `{name}` is a loop")));
            }
            out.push(QArrow {
                name,
                source,
                target,
            });
        }
        Ok(Quiver {
            vertices,
            arrows: out,
        })
    }

    /// The generalized Kronecker quiver with vertices `q0`, `q1` and `m` arrows `rho1..rhom`.
    pub fn kronecker(m: usize) -> Self {
        let names: Vec<String> = (1..=m).map(|k| format!("rho{k}")).collect();
        let arrows: Vec<(&str, &str, &str)> =
            names.iter().map(|n| (n.as_str(), "q0", "q1")).collect();
        Quiver::new(&["q0", "q1"], &arrows).expect("kronecker quiver is valid")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[QArrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    pub fn vertex_name(&self, p: usize) -> &str {
        &self.vertices[p]
    }

    pub fn arrow_name(&self, a: usize) -> &str {
        &self.arrows[a].name
    }

    pub fn is_acyclic(&self) -> bool {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    stack.push(a.target);
                }
            }
        }
        seen == n
    }
}

/// Dimension vector aligned with the quiver's vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimensionVector(pub Vec<usize>);

impl DimensionVector {
    pub fn zero(quiver: &Quiver) -> Self {
        DimensionVector(vec![0; quiver.vertex_count()])
    }

    /// Missing vertices count as zero.
    pub fn from_named<S: AsRef<str>>(quiver: &Quiver, entries: &[(S, usize)]) -> Result<Self> {
        let mut d = Self::zero(quiver);
        for (name, value) in entries {
            d.0[quiver.vertex_index(name.as_ref())?] = *value;
        }
        Ok(d)
    }

    /// Parses `"x=1,y=2"`.
    pub fn parse(quiver: &Quiver, text: &str) -> Result<Self> {
        let mut d = Self::zero(quiver);
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected vertex=value, got `{part}`")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad dimension `{}`", value.trim())))?;
            d.0[quiver.vertex_index(name.trim())?] = value;
        }
        Ok(d)
    }

    pub fn get(&self, p: usize) -> usize {
        self.0[p]
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn to_named(&self, quiver: &Quiver) -> BTreeMap<String, usize> {
        quiver
            .vertices()
            .iter()
            .cloned()
            .zip(self.0.iter().copied())
            .collect()
    }

    pub fn display(&self, quiver: &Quiver) -> String {
        let parts: Vec<String> = quiver
            .vertices()
            .iter()
            .zip(&self.0)
            .map(|(v, d)| format!("{v}={d}"))
            .collect();
        parts.join(",")
    }
}

impl fmt::Display for DimensionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Representation: a matrix of shape `dims(target) × dims(source)` per arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    quiver: Quiver,
    dims: DimensionVector,
    matrices: Vec<ExactMatrix>,
}

impl Representation {
    pub fn new(quiver: Quiver, dims: DimensionVector, matrices: Vec<ExactMatrix>) -> Result<Self> {
        let rep = Representation {
            quiver,
            dims,
            matrices,
        };
        rep.validate()?;
        Ok(rep)
    }

    pub fn zero(quiver: Quiver, dims: DimensionVector, field: Field) -> Self {
        let matrices = quiver
            .arrows()
            .iter()
            .map(|a| ExactMatrix::zeros(field, dims.get(a.target), dims.get(a.source)))
            .collect();
        Representation {
            quiver,
            dims,
            matrices,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dims.0.len() != self.quiver.vertex_count() {
            return Err(Error::Parse(
                "dimension vector length differs from the vertex count".into(),
            ));
        }
        if self.matrices.len() != self.quiver.arrows().len() {
            return Err(Error::Parse("one matrix per arrow is required".into()));
        }
        let mut field = None;
        for (a, m) in self.quiver.arrows().iter().zip(&self.matrices) {
            if m.rows() != self.dims.get(a.target) || m.cols() != self.dims.get(a.source) {
                return Err(Error::ShapeMismatch(a.name.clone()));
            }
            match field {
                None => field = Some(m.field()),
                Some(f) if f != m.field() => return Err(Error::MixedFields),
                _ => {}
            }
        }
        Ok(())
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dims(&self) -> &DimensionVector {
        &self.dims
    }

    pub fn matrices(&self) -> &[ExactMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, arrow: usize) -> &ExactMatrix {
        &self.matrices[arrow]
    }

    pub fn matrix_mut(&mut self, arrow: usize) -> &mut ExactMatrix {
        &mut self.matrices[arrow]
    }

    /// Field shared by all matrices; rational when there are no arrows.
    pub fn field(&self) -> Field {
        self.matrices
            .first()
            .map(ExactMatrix::field)
            .unwrap_or(Field::Rational)
    }

    pub fn reduce_mod(&self, q: u64) -> Result<Representation> {
        let matrices = self
            .matrices
            .iter()
            .map(|m| m.reduce_mod(q))
            .collect::<Result<Vec<_>>>()?;
        Ok(Representation {
            quiver: self.quiver.clone(),
            dims: self.dims.clone(),
            matrices,
        })
    }
}
