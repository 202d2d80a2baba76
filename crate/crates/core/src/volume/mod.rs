//! Volume of `S^3 \ K(p,q)` from the Riley roots.
//!
//! For a root `x` of `P_{p-1}` the points `z_n = P_n(x) / Q_n(x)`,
//! `z_0 = infinity`, give the pre-Bloch element
//!
//! ```text
//! sum_j [v(z_{ell-1}) : inf : z_{2j-2} : z_{2j}] + [inf : 0 : z_{2j-2} : z_{2j}]
//!     + [0 : z_{2p-2} : z_{2j-2} : z_{2j}] + [z_{2p-2} : z_{ell-1} : z_{2j-2} : z_{2j}]
//! ```
//!
//! for `j = 1..(p-1)/2`. Summing the Bloch-Wigner function over its terms
//! gives a signed volume at `x`, and the knot volume is the maximum over all
//! roots. The same number is also computed from four explicit fractions
//! (`A_j, B_j, C_j, E_j` below) as an independent check.

pub mod projective;

use std::cmp::Ordering;

use num_complex::Complex64;
use thiserror::Error;

use crate::dilog::{bloch_wigner_with, DilogConfig};
use crate::knotparams::{BridgeParams, ParamError};
use crate::polyseq::{ConvergentRecurrence, RileyEvaluator};
use crate::roots::{find_roots_with, RootError, RootOptions, RootSet};

pub use projective::{cross_ratio, det, CrossRatio, MobiusMap, ProjectivePoint};

/// Orientation of the `B_j` family in the explicit-fraction route. The
/// fraction `z_{2j-2} / z_{2j}` is the reciprocal of the cross-ratio
/// `[inf : 0 : z_{2j-2} : z_{2j}]`, and `D(1/z) = -D(z)`. Fixed by matching
/// `V(7,3) = 2.82812208833078`; with `+1` that knot evaluates to 1.8854.
pub const THEOREM_B_ORIENTATION: f64 = -1.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VolumeError {
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error(transparent)]
    Roots(#[from] RootError),
    #[error("InvalidRoot: z_(p-1) lies at chordal distance {distance:e} from 0 for x = {root}")]
    InvalidRoot { root: Complex64, distance: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeConfig {
    pub dilog: DilogConfig,
    pub roots: RootOptions,
    /// Chordal distance below which two points are treated as equal.
    pub degeneracy_tol: f64,
    /// Largest accepted chordal distance between `z_{p-1}` and `0`.
    pub root_tol: f64,
}

impl Default for VolumeConfig {
    fn default() -> Self {
        VolumeConfig {
            dilog: DilogConfig::default(),
            roots: RootOptions::default(),
            degeneracy_tol: projective::DEGENERACY_TOL,
            root_tol: 1e-8,
        }
    }
}

/// The points `z_0, ..., z_{2p-2}` for one root.
#[derive(Debug, Clone, PartialEq)]
pub struct ZSequence {
    pub root: Complex64,
    pub points: Vec<ProjectivePoint>,
}

impl ZSequence {
    pub fn get(&self, n: usize) -> &ProjectivePoint {
        &self.points[n]
    }
}

pub fn z_sequence(params: &BridgeParams, root: Complex64) -> Result<ZSequence, VolumeError> {
    z_sequence_with(params, root, &VolumeConfig::default())
}

/// Evaluates `(P_n(x), Q_n(x))` through the convergent recurrence, so no
/// point is ever formed by division.
pub fn z_sequence_with(
    params: &BridgeParams,
    root: Complex64,
    cfg: &VolumeConfig,
) -> Result<ZSequence, VolumeError> {
    let p = params.p() as usize;
    let pairs = ConvergentRecurrence::new(params, 2 * p - 2).pairs(root);
    let points: Vec<ProjectivePoint> = pairs
        .into_iter()
        .map(|(a, b)| ProjectivePoint::new(a, b))
        .collect();
    let distance = points[p - 1].distance(&ProjectivePoint::zero());
    if distance.is_nan() || distance > cfg.root_tol {
        return Err(VolumeError::InvalidRoot { root, distance });
    }
    Ok(ZSequence { root, points })
}

/// Largest chordal distance between `z_n` and the orbit point of the
/// matrix product `u^{e_1} v^{e_2} ...` of the first `n` letters, applied to
/// infinity for even `n` and to `0` for odd `n`.
pub fn mobius_prefix_check(params: &BridgeParams, root: Complex64) -> Result<f64, VolumeError> {
    let zs = z_sequence(params, root)?;
    let mut m = MobiusMap::identity();
    let mut worst = 0.0f64;
    for n in 1..zs.points.len() {
        let eps = f64::from(params.epsilon(n as i64));
        let letter = if n % 2 == 1 {
            MobiusMap::u(root * eps)
        } else {
            MobiusMap::v(root * eps)
        };
        m = m.compose(&letter).normalized();
        let base = if n % 2 == 0 {
            ProjectivePoint::infinity()
        } else {
            ProjectivePoint::zero()
        };
        worst = worst.max(m.apply(&base).distance(zs.get(n)));
    }
    Ok(worst)
}

/// One term `coefficient * [argument]` of the pre-Bloch element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochTerm {
    /// Which of the four cross-ratio families, `1..=4`.
    pub family: u8,
    pub j: usize,
    pub argument: CrossRatio,
    pub coefficient: i64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PreBlochElement {
    pub terms: Vec<BlochTerm>,
}

impl PreBlochElement {
    pub fn nondegenerate(&self) -> impl Iterator<Item = (Complex64, i64)> + '_ {
        self.terms
            .iter()
            .filter_map(|t| t.argument.value().map(|z| (z, t.coefficient)))
    }

    pub fn is_fully_degenerate(&self) -> bool {
        self.terms.iter().all(|t| t.argument.is_degenerate())
    }

    /// `sum c D(z)` over the non-degenerate terms.
    pub fn volume(&self, cfg: &DilogConfig) -> f64 {
        self.nondegenerate()
            .map(|(z, c)| c as f64 * bloch_wigner_with(z, cfg))
            .sum()
    }
}

pub fn bloch_element(params: &BridgeParams, zs: &ZSequence) -> PreBlochElement {
    bloch_element_with(params, zs, projective::DEGENERACY_TOL)
}

pub fn bloch_element_with(params: &BridgeParams, zs: &ZSequence, tol: f64) -> PreBlochElement {
    let p = params.p() as usize;
    let ell = params.ell() as usize;
    let inf = ProjectivePoint::infinity();
    let zero = ProjectivePoint::zero();
    let z_ell = *zs.get(ell - 1);
    let z_last = *zs.get(2 * p - 2);
    let v_z_ell = MobiusMap::v(zs.root).apply(&z_ell);
    let mut terms = Vec::with_capacity(2 * (p - 1));
    for j in 1..=params.half() {
        let a = zs.get(2 * j - 2);
        let b = zs.get(2 * j);
        let families = [
            (&v_z_ell, &inf),
            (&inf, &zero),
            (&zero, &z_last),
            (&z_last, &z_ell),
        ];
        for (k, (first, second)) in families.into_iter().enumerate() {
            terms.push(BlochTerm {
                family: k as u8 + 1,
                j,
                argument: projective::cross_ratio_with_tol(first, second, a, b, tol),
                coefficient: 1,
            });
        }
    }
    PreBlochElement { terms }
}

/// Volumes computed at one root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootVolume {
    pub root: Complex64,
    /// Sum of `D` over the cross-ratio terms.
    pub v_cross: f64,
    /// Sum of `D` over the explicit fractions `A_j, B_j, C_j, E_j`.
    pub v_theorem: f64,
    /// Every term of the element was degenerate; both volumes are zero.
    pub degenerate: bool,
}

/// `D(num / den)`, or zero when either side vanishes (`D(0) = D(inf) = 0`).
fn d_of_ratio(num: Complex64, den: Complex64, tol: f64, cfg: &DilogConfig) -> f64 {
    if num.norm() <= tol || den.norm() <= tol {
        0.0
    } else {
        bloch_wigner_with(num / den, cfg)
    }
}

/// The explicit-fraction route, with every fraction cleared of
/// denominators so that `z_0 = infinity` needs no special casing. With
/// `L = z_{ell-1}`, `m = z_{2p-2}`, `c = z_{2j-2}`, `d = z_{2j}`:
///
/// ```text
/// A_j = (L m - c m + c L) / (L m - d m + d L)
/// B_j = c / d
/// C_j = c (m - d) / (d (m - c))
/// E_j = (m - c)(L - d) / ((m - d)(L - c))
/// ```
fn theorem_sum(params: &BridgeParams, zs: &ZSequence, cfg: &VolumeConfig) -> f64 {
    let p = params.p() as usize;
    let ell = params.ell() as usize;
    let tol = cfg.degeneracy_tol;
    let (la, lb) = zs.get(ell - 1).coords();
    let m_pt = zs.get(2 * p - 2);
    let l_pt = zs.get(ell - 1);
    let (ma, mb) = m_pt.coords();
    // numerator of (L m - c m + c L) after multiplying by b_L b_m b_c
    let mixed = |ca: Complex64, cb: Complex64| la * ma * cb - ca * ma * lb + ca * la * mb;
    let mut total = 0.0;
    for j in 1..=params.half() {
        let c_pt = zs.get(2 * j - 2);
        let d_pt = zs.get(2 * j);
        let (ca, cb) = c_pt.coords();
        let (da, db) = d_pt.coords();
        let a = d_of_ratio(mixed(ca, cb) * db, mixed(da, db) * cb, tol, &cfg.dilog);
        let b = d_of_ratio(ca * db, cb * da, tol, &cfg.dilog);
        let c = d_of_ratio(ca * det(m_pt, d_pt), da * det(m_pt, c_pt), tol, &cfg.dilog);
        let e = d_of_ratio(
            det(m_pt, c_pt) * det(l_pt, d_pt),
            det(m_pt, d_pt) * det(l_pt, c_pt),
            tol,
            &cfg.dilog,
        );
        total += a + THEOREM_B_ORIENTATION * b + c + e;
    }
    total
}

pub fn volume_at_root(params: &BridgeParams, zs: &ZSequence) -> RootVolume {
    volume_at_root_with(params, zs, &VolumeConfig::default())
}

pub fn volume_at_root_with(
    params: &BridgeParams,
    zs: &ZSequence,
    cfg: &VolumeConfig,
) -> RootVolume {
    let element = bloch_element_with(params, zs, cfg.degeneracy_tol);
    if element.is_fully_degenerate() {
        return RootVolume {
            root: zs.root,
            v_cross: 0.0,
            v_theorem: 0.0,
            degenerate: true,
        };
    }
    RootVolume {
        root: zs.root,
        v_cross: element.volume(&cfg.dilog),
        v_theorem: theorem_sum(params, zs, cfg),
        degenerate: false,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VolumeResult {
    pub params: BridgeParams,
    /// Sorted by `(Re, Im)` of the root.
    pub per_root: Vec<RootVolume>,
    pub volume: f64,
    pub argmax_root: Complex64,
    pub roots: RootSet,
}

impl VolumeResult {
    /// Largest `|v_cross - v_theorem|` over the roots.
    pub fn dual_path_gap(&self) -> f64 {
        self.per_root
            .iter()
            .map(|r| (r.v_cross - r.v_theorem).abs())
            .fold(0.0, f64::max)
    }
}

fn lex(a: Complex64, b: Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

pub fn volume(params: &BridgeParams) -> Result<VolumeResult, VolumeError> {
    volume_with(params, &VolumeConfig::default())
}

/// Volume as the maximum of the cross-ratio sum over all roots of
/// `P_{p-1}`. Ties within `1e-12` go to the lexicographically largest root.
pub fn volume_with(params: &BridgeParams, cfg: &VolumeConfig) -> Result<VolumeResult, VolumeError> {
    let evaluator = RileyEvaluator::new(params);
    let roots = find_roots_with(&evaluator, &cfg.roots)?;
    let mut per_root = Vec::new();
    for cluster in roots.clusters(cfg.roots.cluster_radius) {
        let zs = z_sequence_with(params, cluster.representative, cfg)?;
        per_root.push(volume_at_root_with(params, &zs, cfg));
    }
    per_root.sort_by(|a, b| lex(a.root, b.root));

    let mut best = per_root[0];
    for r in &per_root[1..] {
        let tie = (r.v_cross - best.v_cross).abs() <= 1e-12 * best.v_cross.abs().max(1.0);
        if (!tie && r.v_cross > best.v_cross)
            || (tie && lex(r.root, best.root) == Ordering::Greater)
        {
            best = *r;
        }
    }
    Ok(VolumeResult {
        params: *params,
        volume: best.v_cross,
        argmax_root: best.root,
        per_root,
        roots,
    })
}
