use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::SoError;
use crate::linalg::{block_diag, is_special_orthogonal, Form, LinalgError, Matrix, Scalar, Tolerance};
use crate::words::{Assignment, WordError};

/// The group a representation is declared on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupTag {
    Free,
    /// `Z_p * Z_q`: generator 1 has order `p`, generator 2 has order `q`.
    ZpZq { p: u64, q: u64 },
}

/// Generator images of a representation, with its form, group, and the block
/// sizes of an orthogonal direct-sum decomposition (a single block unless the
/// representation was assembled as a direct sum).
#[derive(Clone, PartialEq)]
pub struct Representation<T> {
    form: Form,
    group: GroupTag,
    generators: BTreeMap<u32, Matrix<T>>,
    blocks: Vec<usize>,
}

impl<T: Scalar> std::fmt::Debug for Representation<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Representation")
            .field("form", &self.form)
            .field("group", &self.group)
            .field("blocks", &self.blocks)
            .field("generators", &self.generators)
            .finish()
    }
}

impl<T: Scalar> Representation<T> {
    /// Checks shapes only; see [`Representation::validate`] for group membership.
    pub fn new(
        form: Form,
        group: GroupTag,
        generators: impl IntoIterator<Item = (u32, Matrix<T>)>,
    ) -> Result<Self, SoError> {
        let generators: BTreeMap<u32, Matrix<T>> = generators.into_iter().collect();
        let Some(first) = generators.values().next() else {
            return Err(SoError::Shape("representation without generators".into()));
        };
        let d = first.dim()?;
        for (&g, m) in &generators {
            if g == 0 {
                return Err(WordError::ZeroGenerator.into());
            }
            if m.dim()? != d {
                return Err(LinalgError::DimensionMismatch {
                    op: "representation",
                    left: (d, d),
                    right: (m.rows(), m.cols()),
                }
                .into());
            }
        }
        if let GroupTag::ZpZq { .. } = group {
            if !generators.keys().eq([1u32, 2].iter()) {
                return Err(SoError::Shape("Z_p * Z_q needs generators 1 and 2".into()));
            }
        }
        Ok(Representation {
            form,
            group,
            generators,
            blocks: vec![d],
        })
    }

    /// Records a direct-sum block structure; sizes must add up to the dimension.
    pub fn with_blocks(mut self, blocks: Vec<usize>) -> Result<Self, SoError> {
        if blocks.iter().sum::<usize>() != self.dim() || blocks.contains(&0) {
            return Err(SoError::Shape(format!(
                "blocks {blocks:?} do not partition dimension {}",
                self.dim()
            )));
        }
        self.blocks = blocks;
        Ok(self)
    }

    /// Every generator preserves the form with determinant 1, and for
    /// `Z_p * Z_q` the generators have orders dividing `p` and `q`.
    pub fn validate(&self, tol: &Tolerance) -> Result<(), SoError> {
        for (&g, m) in &self.generators {
            if !is_special_orthogonal(m, self.form, tol) {
                return Err(SoError::NotSpecialOrthogonal(format!("generator {g}")));
            }
        }
        if let GroupTag::ZpZq { p, q } = self.group {
            for (g, order) in [(1u32, p), (2, q)] {
                let m = &self.generators[&g];
                let power = m.pow(order)?;
                if !power.approx_eq(&Matrix::identity(self.dim()), tol) {
                    return Err(SoError::Order { gen: g, order });
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.generators.values().next().map_or(0, Matrix::rows)
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn group(&self) -> GroupTag {
        self.group
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn generators(&self) -> &BTreeMap<u32, Matrix<T>> {
        &self.generators
    }

    pub fn generator(&self, g: u32) -> Option<&Matrix<T>> {
        self.generators.get(&g)
    }

    /// Generator images with inverses taken from the preserved form.
    pub fn assignment(&self) -> Result<Assignment<T>, WordError> {
        Assignment::orthogonal(
            self.form,
            self.generators.iter().map(|(&g, m)| (g, m.clone())),
        )
    }

    /// Simultaneous conjugation `m rho m_inv`.
    pub fn conjugate(&self, m: &Matrix<T>, m_inv: &Matrix<T>) -> Result<Self, SoError> {
        let mut out = self.clone();
        for img in out.generators.values_mut() {
            *img = img.conjugate_by(m, m_inv)?;
        }
        Ok(out)
    }

    /// Orthogonal direct sum; the group tags must agree.
    pub fn direct_sum(&self, other: &Self) -> Result<Self, SoError> {
        if self.group != other.group || self.form != other.form {
            return Err(SoError::Shape("direct sum of incompatible representations".into()));
        }
        if !self.generators.keys().eq(other.generators.keys()) {
            return Err(SoError::Shape("direct sum needs the same generators".into()));
        }
        let gens = self
            .generators
            .iter()
            .map(|(&g, m)| Ok((g, block_diag(&[m.clone(), other.generators[&g].clone()])?)))
            .collect::<Result<Vec<_>, SoError>>()?;
        let blocks = self.blocks.iter().chain(&other.blocks).copied().collect();
        Representation::new(self.form, self.group, gens)?.with_blocks(blocks)
    }

    /// Restriction to block `index` of the recorded decomposition.
    pub fn block_restriction(&self, index: usize) -> Result<Self, SoError> {
        let start: usize = self.blocks[..index].iter().sum();
        let end = start + self.blocks[index];
        let gens = self
            .generators
            .iter()
            .map(|(&g, m)| (g, m.block(start, end)));
        Representation::new(self.form, self.group, gens)
    }
}
