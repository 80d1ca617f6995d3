use crate::error::{Error, Result};
use crate::numeric::ensure_dim;
use crate::sets::FeasibleSet;

/// Cartesian product of sets laid out in consecutive coordinate blocks.
///
/// Every oracle splits across blocks. The min-infinity-norm point of a product
/// is the concatenation of the per-block minimizers.
pub struct ProductSet {
    blocks: Vec<Box<dyn FeasibleSet>>,
    offsets: Vec<usize>,
    n: usize,
}

impl ProductSet {
    pub fn new(blocks: Vec<Box<dyn FeasibleSet>>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::usage("ProductSet needs at least one block"));
        }
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut n = 0;
        for b in &blocks {
            offsets.push(n);
            n += b.dim();
        }
        Ok(Self { blocks, offsets, n })
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block(&self, j: usize) -> &dyn FeasibleSet {
        self.blocks[j].as_ref()
    }

    /// Coordinate range of block `j`.
    pub fn range(&self, j: usize) -> std::ops::Range<usize> {
        self.offsets[j]..self.offsets[j] + self.blocks[j].dim()
    }

    fn per_block<F>(&self, v: &[f64], mut f: F) -> Result<Vec<f64>>
    where
        F: FnMut(&dyn FeasibleSet, &[f64]) -> Result<Vec<f64>>,
    {
        ensure_dim(self.n, v.len())?;
        let mut out = Vec::with_capacity(self.n);
        for j in 0..self.blocks.len() {
            out.extend(f(self.blocks[j].as_ref(), &v[self.range(j)])?);
        }
        Ok(out)
    }
}

impl std::fmt::Debug for ProductSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProductSet")
            .field("blocks", &self.blocks.len())
            .field("dim", &self.n)
            .finish()
    }
}

impl FeasibleSet for ProductSet {
    fn dim(&self) -> usize {
        self.n
    }

    fn lmo(&self, c: &[f64]) -> Result<Vec<f64>> {
        self.per_block(c, |b, part| b.lmo(part))
    }

    fn min_inf_norm_point(&self) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(self.n);
        for b in &self.blocks {
            out.extend(b.min_inf_norm_point()?);
        }
        Ok(out)
    }

    fn project(&self, z: &[f64]) -> Result<Vec<f64>> {
        self.per_block(z, |b, part| b.project(part))
    }

    fn contains(&self, x: &[f64], tol: f64) -> Result<bool> {
        ensure_dim(self.n, x.len())?;
        for j in 0..self.blocks.len() {
            if !self.blocks[j].contains(&x[self.range(j)], tol)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
