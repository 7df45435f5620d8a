//! Sum and product of the cyclicity index of a graph and its complement.

use crate::cyclicity::{Analysis, BoundCheck, BoundKind};
use crate::error::{Error, Result};
use crate::graph::{EdgeList, Graph};
use crate::resistance::SolverConfig;
use serde::{Deserialize, Serialize};

pub const NG_SUM_LOWER: &str = "ng_sum_lower";
pub const NG_SUM_UPPER: &str = "ng_sum_upper";
pub const NG_PRODUCT_LOWER: &str = "ng_product_lower";
pub const NG_PRODUCT_UPPER: &str = "ng_product_upper";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NordhausGaddumRecord {
    pub graph: EdgeList,
    pub n: usize,
    pub m: usize,
    pub c_g: f64,
    pub c_gbar: f64,
    pub sum: f64,
    pub product: f64,
    /// `n(n-1)(n-4)/8`, attained.
    pub sum_lower: f64,
    /// `n(n-1)(n-4)/4`, strict.
    pub sum_upper: f64,
    /// `(n(n-1)(n-4)/8)²`, strict.
    pub product_upper: f64,
    pub sum_lower_tight: bool,
    pub product_lower_tight: bool,
}

/// `n(n-1)(n-4)/8`.
pub fn ng_sum_lower_value(n: usize) -> f64 {
    let n = n as f64;
    n * (n - 1.0) * (n - 4.0) / 8.0
}

/// Record plus the four bound checks, given an analysis of `G`.
pub(crate) fn evaluate(g_analysis: &Analysis<'_>) -> Result<(NordhausGaddumRecord, Vec<BoundCheck>)> {
    let g = g_analysis.graph();
    let n = g.n();
    if n < 5 {
        return Err(Error::SizeTooSmall { got: n, min: 5 });
    }
    let gbar = g.complement()?;
    if !gbar.is_connected() {
        return Err(Error::ComplementDisconnected);
    }
    let tol = g_analysis.tolerance();
    let bar = Analysis::new(&gbar, g_analysis.solver(), tol)?;
    let (c_g, c_gbar) = (g_analysis.cyclicity(), bar.cyclicity());
    let (sum, product) = (c_g + c_gbar, c_g * c_gbar);
    let sum_lower = ng_sum_lower_value(n);
    let sum_upper = 2.0 * sum_lower;
    let product_upper = sum_lower * sum_lower;

    let sum_expected = g.m() == gbar.m()
        && g_analysis.is_electrically_edge_equivalent()
        && bar.is_electrically_edge_equivalent();
    let product_expected = g.is_tree() || gbar.is_tree();
    let checks = vec![
        BoundCheck::new(NG_SUM_LOWER, BoundKind::Lower, sum_lower, sum, tol, sum_expected),
        BoundCheck::strict(NG_SUM_UPPER, BoundKind::Upper, sum_upper, sum, tol),
        BoundCheck::new(NG_PRODUCT_LOWER, BoundKind::Lower, 0.0, product, tol, product_expected),
        BoundCheck::strict(NG_PRODUCT_UPPER, BoundKind::Upper, product_upper, product, tol),
    ];
    let record = NordhausGaddumRecord {
        graph: EdgeList::from(g),
        n,
        m: g.m(),
        c_g,
        c_gbar,
        sum,
        product,
        sum_lower,
        sum_upper,
        product_upper,
        sum_lower_tight: checks[0].tight,
        product_lower_tight: checks[2].tight,
    };
    Ok((record, checks))
}

/// Complement inequalities for a connected `G` on `n >= 5` vertices whose
/// complement is connected.
pub fn nordhaus_gaddum(g: &Graph, solver: &SolverConfig, tolerance: f64) -> Result<NordhausGaddumRecord> {
    let a = Analysis::new(g, solver, tolerance)?;
    Ok(evaluate(&a)?.0)
}
