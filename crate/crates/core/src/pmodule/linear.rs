//! Assembling linear maps between spaces of block matrices.

use crate::exactfield::{ExactMatrix, Scalar};

/// Offsets of consecutive `rows × cols` matrix blocks flattened row-major into one vector.
#[derive(Clone, Debug)]
pub(crate) struct BlockLayout {
    offsets: Vec<usize>,
    shapes: Vec<(usize, usize)>,
    total: usize,
}

impl BlockLayout {
    pub fn new(shapes: Vec<(usize, usize)>) -> Self {
        let mut offsets = Vec::with_capacity(shapes.len());
        let mut total = 0;
        for &(r, c) in &shapes {
            offsets.push(total);
            total += r * c;
        }
        Self { offsets, shapes, total }
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn offset(&self, block: usize) -> usize {
        self.offsets[block]
    }

    /// Cuts a flat vector back into its blocks.
    pub fn unflatten(&self, v: &[Scalar], field: crate::exactfield::FieldSpec) -> Vec<ExactMatrix> {
        self.shapes
            .iter()
            .zip(&self.offsets)
            .map(|(&(r, c), &o)| {
                ExactMatrix::from_scalars(field, r, c, v[o..o + r * c].to_vec()).expect("block sizes agree")
            })
            .collect()
    }
}

/// Adds `sign · vec(L · X · R)` to `target`, where `X` is the unknown block starting at column
/// `col_off` and the result block starts at row `row_off`.
pub(crate) fn add_sandwich(
    target: &mut ExactMatrix,
    row_off: usize,
    col_off: usize,
    left: &ExactMatrix,
    right: &ExactMatrix,
    sign: i64,
) {
    let f = target.field();
    let s = f.from_i64(sign);
    let (xr, xc) = (left.cols(), right.rows());
    for i in 0..left.rows() {
        for k in 0..xr {
            let a = left.get(i, k);
            if f.is_zero(a) {
                continue;
            }
            let sa = f.mul(&s, a);
            for l in 0..xc {
                for j in 0..right.cols() {
                    let b = right.get(l, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    target.add_at(row_off + i * right.cols() + j, col_off + k * xc + l, &f.mul(&sa, b));
                }
            }
        }
    }
}
