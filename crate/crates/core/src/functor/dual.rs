//! Dual vertical lift: covariables `Ψ` transforming contragrediently to `δX`.

use crate::bundle::validate::weight_blocks;
use crate::bundle::{CoordinateFrame, CoordinateMap, FiberCoord, FilteredBundleSpec};
use crate::field::FunctionMatrix;
use crate::weighted::{Weight, WeightedPolynomial};

use super::lift::prefixed;
use super::{derived_bundle, single_axis, FunctorError};

/// Fibers `X (w,0)`, then `pX (k-w+1, 1)`.
pub fn dual_vertical_frame(frame: &CoordinateFrame) -> Result<CoordinateFrame, FunctorError> {
    let k = single_axis(frame)?;
    let mut fibers: Vec<FiberCoord> = frame
        .fibers()
        .iter()
        .map(|f| FiberCoord { name: f.name.clone(), weight: f.weight.extended(0) })
        .collect();
    fibers.extend(frame.fibers().iter().map(|f| FiberCoord {
        name: prefixed("p", &f.name),
        weight: Weight(vec![k - f.weight.0[0] + 1, 1]),
    }));
    Ok(CoordinateFrame::new(2, frame.base().to_vec(), fibers)?)
}

type PolyMatrix = Vec<Vec<WeightedPolynomial>>;

/// `A^{-1}` for the fiber Jacobian `A_{IJ} = ∂X'^I/∂X^J` of a transition, by block
/// forward substitution over the weight blocks.
pub fn inverse_fiber_jacobian(map: &CoordinateMap, frame: &CoordinateFrame) -> Result<PolyMatrix, FunctorError> {
    let n = frame.nfiber();
    let nb = frame.nbase();
    let mut a: PolyMatrix = Vec::with_capacity(n);
    for rule in map.fiber_rules() {
        a.push((0..n).map(|j| rule.fiber_partial(j)).collect::<Result<Vec<_>, _>>()?);
    }
    let blocks: Vec<(Weight, Vec<usize>)> = weight_blocks(frame).into_iter().collect();
    let mut inv_diag: Vec<FunctionMatrix> = Vec::with_capacity(blocks.len());
    for (w, idx) in &blocks {
        let mut rows = Vec::with_capacity(idx.len());
        for &i in idx {
            let mut row = Vec::with_capacity(idx.len());
            for &j in idx {
                let entry = a[i][j].as_base().ok_or_else(|| {
                    FunctorError::InternalInvariantBroken(format!(
                        "linear coefficient in block {w} depends on fiber coordinates"
                    ))
                })?;
                row.push(entry);
            }
            rows.push(row);
        }
        let inv = FunctionMatrix::from_rows(nb, rows)
            .inverse()
            .map_err(|_| FunctorError::SingularLinearPart(w.to_string()))?;
        inv_diag.push(inv);
    }

    let zero = WeightedPolynomial::zero(nb, n);
    let mut b: PolyMatrix = vec![vec![zero.clone(); n]; n];
    // columns block by block; rows from the column's block upward
    for (cb, (_, cidx)) in blocks.iter().enumerate() {
        for (ci, &c) in cidx.iter().enumerate() {
            for (ri, &r) in cidx.iter().enumerate() {
                b[r][c] = WeightedPolynomial::base(n, inv_diag[cb].get(ri, ci).clone());
            }
        }
        for (rb, (_, ridx)) in blocks.iter().enumerate().skip(cb + 1) {
            // S = Σ_{blocks kb in [cb, rb)} A[rb][kb] B[kb][cb]
            let mut s: PolyMatrix = vec![vec![zero.clone(); cidx.len()]; ridx.len()];
            for (_, kidx) in &blocks[cb..rb] {
                for (ri, &r) in ridx.iter().enumerate() {
                    for &k in kidx {
                        if a[r][k].is_zero() {
                            continue;
                        }
                        for (ci, &c) in cidx.iter().enumerate() {
                            if b[k][c].is_zero() {
                                continue;
                            }
                            s[ri][ci] = &s[ri][ci] + &(&a[r][k] * &b[k][c]);
                        }
                    }
                }
            }
            // B[rb][cb] = -inv(A[rb][rb]) S
            for (ri, &r) in ridx.iter().enumerate() {
                for (ci, &c) in cidx.iter().enumerate() {
                    let mut acc = zero.clone();
                    for (ki, srow) in s.iter().enumerate() {
                        let coeff = inv_diag[rb].get(ri, ki);
                        if coeff.is_zero() || srow[ci].is_zero() {
                            continue;
                        }
                        acc = &acc - &srow[ci].scale(coeff);
                    }
                    b[r][c] = acc;
                }
            }
        }
    }
    Ok(b)
}

pub fn dual_vertical_map(map: &CoordinateMap, frame: &CoordinateFrame) -> Result<CoordinateMap, FunctorError> {
    let n = frame.nfiber();
    let nb = frame.nbase();
    let inv = inverse_fiber_jacobian(map, frame)?;
    let embed: Vec<Option<usize>> = (0..n).map(Some).collect();
    let lift = |p: &WeightedPolynomial| p.reindex_fibers(2 * n, &embed).expect("embedding keeps every coordinate");
    let mut rules: Vec<WeightedPolynomial> = map.fiber_rules().iter().map(lift).collect();
    for i in 0..n {
        let mut acc = WeightedPolynomial::zero(nb, 2 * n);
        for (j, row) in inv.iter().enumerate() {
            if row[i].is_zero() {
                continue;
            }
            acc = &acc + &(&lift(&row[i]) * &WeightedPolynomial::fiber_var(nb, 2 * n, n + j));
        }
        rules.push(acc);
    }
    Ok(CoordinateMap::new(nb, 2 * n, map.base_rules().to_vec(), rules)?)
}

pub fn dual_vertical_lift(bundle: &FilteredBundleSpec) -> Result<FilteredBundleSpec, FunctorError> {
    let frame = dual_vertical_frame(&bundle.frame)?;
    let source = bundle.frame.clone();
    derived_bundle(format!("Vstar_{}", bundle.name), frame, &bundle.atlas, |m| dual_vertical_map(m, &source))
}
