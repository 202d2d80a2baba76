//! Text and JSON output for `vol` and `info`.

use std::fmt::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use twobridge::freegroup::build_presentation;
use twobridge::knotparams::{cf_positive, epsilon_sequence, lackenby_bounds};
use twobridge::polyseq::{riley_poly, RileyEvaluator};
use twobridge::roots::{find_roots_with, RootOptions};
use twobridge::{BridgeParams, VolumeResult};

use crate::{fixed12, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexJson {
    fn from(z: Complex64) -> Self {
        ComplexJson { re: z.re, im: z.im }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootVolumeJson {
    pub root: ComplexJson,
    pub v_cross: f64,
    pub v_theorem: f64,
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VolumeJson {
    pub p: u64,
    pub q: u64,
    pub volume: f64,
    pub argmax_root: ComplexJson,
    pub per_root: Vec<RootVolumeJson>,
}

impl From<&VolumeResult> for VolumeJson {
    fn from(r: &VolumeResult) -> Self {
        VolumeJson {
            p: r.params.p(),
            q: r.params.q(),
            volume: r.volume,
            argmax_root: r.argmax_root.into(),
            per_root: r
                .per_root
                .iter()
                .map(|rv| RootVolumeJson {
                    root: rv.root.into(),
                    v_cross: rv.v_cross,
                    v_theorem: rv.v_theorem,
                    degenerate: rv.degenerate,
                })
                .collect(),
        }
    }
}

fn complex_cell(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{} {sign} {}i", fixed12(z.re), fixed12(z.im.abs()))
}

/// The volume on one line, optionally followed by the per-root table.
pub fn volume_text(r: &VolumeResult, all_roots: bool) -> String {
    let mut out = format!("{}\n", fixed12(r.volume));
    if all_roots {
        let _ = writeln!(
            out,
            "{:<36} {:>16} {:>16}  degenerate",
            "root", "v_cross", "v_theorem"
        );
        for rv in &r.per_root {
            let _ = writeln!(
                out,
                "{:<36} {:>16} {:>16}  {}",
                complex_cell(rv.root),
                fixed12(rv.v_cross),
                fixed12(rv.v_theorem),
                rv.degenerate
            );
        }
    }
    out
}

pub fn volume_json(r: &VolumeResult) -> String {
    let mut s = serde_json::to_string_pretty(&VolumeJson::from(r)).expect("plain data serializes");
    s.push('\n');
    s
}

/// The combinatorial data of `K(p, q)`, and with `with_roots` the Riley
/// roots with their relative residuals.
pub fn info_text(params: &BridgeParams, with_roots: bool) -> Result<String, CliError> {
    let p = params.p();
    let q = params.q();
    let cf = cf_positive(p as i64, q as i64)?;
    let (lo, hi) = lackenby_bounds(&cf);
    let words = build_presentation(params);
    let poly = riley_poly(params);
    let signs = epsilon_sequence(params, (p - 1) as usize);

    let mut out = String::new();
    let _ = writeln!(out, "knot = {params}");
    let _ = writeln!(out, "p = {p}");
    let _ = writeln!(out, "q = {q}");
    let _ = writeln!(out, "ell = {}", params.ell());
    let _ = writeln!(out, "epsilon = {}", signs.to_plus_minus());
    let _ = writeln!(out, "cf = {cf}");
    let _ = writeln!(out, "conway = {}", cf.conway_notation());
    if params.is_torus() {
        let _ = writeln!(out, "torus knot, volume 0");
    } else {
        let _ = writeln!(out, "volume bounds = [{}, {}]", fixed12(lo), fixed12(hi));
    }
    let _ = writeln!(out, "w = {}", words.w);
    let _ = writeln!(out, "g = {}", words.g);
    let _ = writeln!(out, "r = {}", words.r);
    let _ = writeln!(out, "P_{} = {}", p - 1, poly);
    let _ = writeln!(out, "coefficients = {}", poly.coeff_list());

    if with_roots {
        let roots = find_roots_with(&RileyEvaluator::new(params), &RootOptions::default())
            .map_err(|e| CliError::Computation(e.to_string()))?;
        let _ = writeln!(out, "roots ({}):", roots.roots.len());
        let _ = writeln!(out, "{:>24} {:>24} {:>24}", "re", "im", "residual");
        let mut order: Vec<usize> = (0..roots.roots.len()).collect();
        order.sort_by(|&a, &b| {
            let (x, y) = (roots.roots[a], roots.roots[b]);
            x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im))
        });
        for i in order {
            let z = roots.roots[i];
            let _ = writeln!(
                out,
                "{:>24.14e} {:>24.14e} {:>24.14e}",
                z.re, z.im, roots.residuals[i]
            );
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use twobridge::{make_params, volume};

    #[test]
    fn info_for_figure_eight() {
        let text = info_text(&make_params(5, 3).unwrap(), false).unwrap();
        assert!(text.contains("ell = 3\n"));
        assert!(text.contains("P_4 = x^4 - x^2 + 1\n"));
        assert!(text.contains("g = u v u^-1 v^-1\n"), "{text}");
    }

    #[test]
    fn info_for_seven_three() {
        let text = info_text(&make_params(7, 3).unwrap(), true).unwrap();
        assert!(text.contains("cf = [2, 3]\n"));
        assert!(text.contains("epsilon = + + - - + +\n"));
        assert!(text.contains("roots (6):"));
    }

    #[test]
    fn volume_text_has_twelve_decimals() {
        let r = volume(&make_params(7, 3).unwrap()).unwrap();
        assert_eq!(volume_text(&r, false), "2.828122088331\n");
        let table = volume_text(&r, true);
        assert_eq!(table.lines().count(), 2 + r.per_root.len());
    }

    #[test]
    fn json_round_trips() {
        let r = volume(&make_params(9, 5).unwrap()).unwrap();
        let parsed: VolumeJson = serde_json::from_str(&volume_json(&r)).unwrap();
        assert_eq!(parsed, VolumeJson::from(&r));
    }
}
