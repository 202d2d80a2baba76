//! The acceptance checks, numbered 1 to 13. `selftest` and the
//! `acceptance` test target both run them through [`Suite`].

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use twobridge::dilog::{bloch_wigner_with, lobachevsky_with};
use twobridge::freegroup::{
    build_presentation, check_fundamental_formula, check_lemma_2_1, check_lemma_2_2, reduce, Gen,
};
use twobridge::knotparams::{cf_positive, equivalent_params, lackenby_bounds};
use twobridge::polyseq::{convergents, convergents_from_signs, riley_poly, IntPoly};
use twobridge::volume::{volume_with, z_sequence_with, ProjectivePoint, VolumeConfig};
use twobridge::{make_params, BridgeParams, VolumeResult};

use crate::figure::render_svg;
use crate::oracle::{catalan, continued_fraction, matches_pair};
use crate::scan::{scan_with, to_csv, valid_pairs};

pub const CRITERIA: u8 = 13;

/// Published value of `V(7,3)`.
const V_7_3: f64 = 2.828_122_088_330_78;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckConfig {
    pub volume: VolumeConfig,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            volume: VolumeConfig::default(),
            seed: 20_260_101,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub id: u8,
    pub name: &'static str,
    pub measured: String,
    pub passed: bool,
    pub elapsed: Duration,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:>2}  {:<4}  {:<28}  {}  ({:.2} s)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.measured,
            self.elapsed.as_secs_f64()
        )
    }
}

pub fn name(id: u8) -> &'static str {
    match id {
        1 => "K(7,3) volume",
        2 => "K(5,3) triple identity",
        3 => "torus knots vanish",
        4 => "Riley polynomial of K(5,3)",
        5 => "free-group word identities",
        6 => "fundamental formula",
        7 => "convergent oracle",
        8 => "dual-path agreement",
        9 => "isotopy invariance",
        10 => "Lackenby sandwich",
        11 => "dilogarithm identities",
        12 => "z-sequence endpoints",
        13 => "scan and figure",
        _ => "unknown",
    }
}

type Census = BTreeMap<(u64, u64), VolumeResult>;

/// Runs checks, computing the `p < 50` volume census at most once.
pub struct Suite {
    cfg: CheckConfig,
    census: OnceLock<Result<Census, String>>,
}

type Verdict = Result<(bool, String), String>;

impl Suite {
    pub fn new(cfg: CheckConfig) -> Self {
        Suite {
            cfg,
            census: OnceLock::new(),
        }
    }

    fn census(&self) -> Result<&Census, String> {
        self.census
            .get_or_init(|| {
                valid_pairs(49)
                    .par_iter()
                    .map(|prm| {
                        volume_with(prm, &self.cfg.volume)
                            .map(|r| ((prm.p(), prm.q()), r))
                            .map_err(|e| format!("{prm}: {e}"))
                    })
                    .collect()
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn run(&self, id: u8) -> CheckOutcome {
        let start = Instant::now();
        let verdict = match id {
            1 => self.k73_volume(),
            2 => self.k53_identity(),
            3 => self.torus_vanishing(),
            4 => self.riley_exact(),
            5 => self.word_identities(),
            6 => self.fundamental_formula(),
            7 => self.convergent_oracle(),
            8 => self.dual_path(),
            9 => self.isotopy(),
            10 => self.lackenby(),
            11 => self.dilog_suite(),
            12 => self.z_endpoints(),
            13 => self.scan_and_figure(),
            _ => Err(format!("no criterion {id}")),
        };
        let (passed, measured) = verdict.unwrap_or_else(|e| (false, format!("error: {e}")));
        CheckOutcome {
            id,
            name: name(id),
            measured,
            passed,
            elapsed: start.elapsed(),
        }
    }

    pub fn run_all(&self) -> Vec<CheckOutcome> {
        (1..=CRITERIA).map(|id| self.run(id)).collect()
    }

    fn params(p: i64, q: i64) -> Result<BridgeParams, String> {
        make_params(p, q).map_err(|e| e.to_string())
    }

    fn k73_volume(&self) -> Verdict {
        let prm = Self::params(7, 3)?;
        let start = Instant::now();
        let v = volume_with(&prm, &self.cfg.volume)
            .map_err(|e| e.to_string())?
            .volume;
        let t = start.elapsed().as_secs_f64();
        let err = (v - V_7_3).abs();
        Ok((
            err <= 1e-9 && t < 0.1,
            format!("V = {v:.14}, error {err:.1e}, {:.1} ms", t * 1e3),
        ))
    }

    fn k53_identity(&self) -> Verdict {
        let v = volume_with(&Self::params(5, 3)?, &self.cfg.volume)
            .map_err(|e| e.to_string())?
            .volume;
        let j = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        let d = 3.0 * bloch_wigner_with(j, &self.cfg.volume.dilog);
        let l = 6.0 * lobachevsky_with(PI / 3.0, &self.cfg.volume.dilog);
        let spread = (v - d).abs().max((v - l).abs()).max((d - l).abs());
        Ok((spread <= 1e-9, format!("V = {v:.12}, spread {spread:.1e}")))
    }

    fn torus_vanishing(&self) -> Verdict {
        let census = self.census()?;
        let worst = census
            .iter()
            .filter(|((_, q), _)| *q == 1)
            .map(|(_, r)| r.volume.abs())
            .fold(0.0, f64::max);
        Ok((worst <= 1e-8, format!("max |V(p,1)| = {worst:.1e}")))
    }

    fn riley_exact(&self) -> Verdict {
        let poly = riley_poly(&Self::params(5, 3)?);
        let ok = poly == IntPoly::from_i64(&[1, 0, -1, 0, 1]);
        Ok((ok, format!("P_4 = {poly}")))
    }

    fn word_identities(&self) -> Verdict {
        let pairs = valid_pairs(99);
        let failures: Vec<String> = pairs
            .par_iter()
            .filter(|prm| {
                let words = build_presentation(prm);
                !(check_lemma_2_1(&words) && check_lemma_2_2(&words))
            })
            .map(|prm| prm.to_string())
            .collect();
        Ok((
            failures.is_empty(),
            format!(
                "{} pairs, {} failures {:?}",
                pairs.len(),
                failures.len(),
                failures
            ),
        ))
    }

    fn fundamental_formula(&self) -> Verdict {
        let pairs = valid_pairs(49);
        let bad_pairs = pairs
            .par_iter()
            .filter(|prm| {
                let w = build_presentation(prm);
                let ok = [&w.w, &w.g, &w.r, &w.l]
                    .into_iter()
                    .all(check_fundamental_formula);
                !ok
            })
            .count();
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed);
        let mut bad_words = 0;
        for _ in 0..1000 {
            let len = rng.gen_range(0..30);
            let raw: Vec<(Gen, i64)> = (0..len)
                .map(|_| {
                    let g = if rng.gen_bool(0.5) { Gen::U } else { Gen::V };
                    let e = if rng.gen_bool(0.5) { 1 } else { -1 } * rng.gen_range(1..=3);
                    (g, e)
                })
                .collect();
            if !check_fundamental_formula(&reduce(&raw)) {
                bad_words += 1;
            }
        }
        Ok((
            bad_pairs == 0 && bad_words == 0,
            format!(
                "{} pairs x 4 words and 1000 random words, {} failures",
                pairs.len(),
                bad_pairs + bad_words
            ),
        ))
    }

    fn convergent_oracle(&self) -> Verdict {
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed ^ 7);
        let mut sampled = 0;
        let mut mismatches = 0;
        while sampled < 50 {
            let p = 2 * rng.gen_range(1..100) + 1;
            let q = 2 * rng.gen_range(0..(p - 1) / 2) + 1;
            let Ok(prm) = make_params(p, q) else { continue };
            sampled += 1;
            let signs: Vec<i8> = (1..=12).map(|n| prm.epsilon(n)).collect();
            for pair in convergents(&prm, 12) {
                let f = continued_fraction(&signs[..pair.n]);
                if !matches_pair(&f, &pair.p, &pair.q) {
                    mismatches += 1;
                }
            }
        }

        let mut det_failures = 0;
        for (p, q) in [(7, 3), (49, 19), (97, 35), (199, 73)] {
            let prm = Self::params(p, q)?;
            let signs: Vec<i8> = (1..=200).map(|n| prm.epsilon(n)).collect();
            let mut prev = (IntPoly::one(), IntPoly::zero());
            for pair in convergents_from_signs(&signs) {
                let det = &(&pair.p * &prev.1) - &(&prev.0 * &pair.q);
                let expected = IntPoly::constant(if pair.n % 2 == 0 { 1 } else { -1 });
                if det != expected {
                    det_failures += 1;
                }
                prev = (pair.p, pair.q);
            }
        }
        Ok((
            mismatches == 0 && det_failures == 0,
            format!("{mismatches} oracle mismatches (50 pairs, n <= 12), {det_failures} determinant failures (n <= 200)"),
        ))
    }

    fn dual_path(&self) -> Verdict {
        let census = self.census()?;
        let (worst, at) = census.values().map(|r| (r.dual_path_gap(), r.params)).fold(
            (0.0, None),
            |acc, (g, prm)| if g > acc.0 { (g, Some(prm)) } else { acc },
        );
        let at = at.map(|p| format!(" at {p}")).unwrap_or_default();
        Ok((
            worst <= 1e-9,
            format!("max |v_cross - v_theorem| = {worst:.1e}{at}"),
        ))
    }

    fn isotopy(&self) -> Verdict {
        let census = self.census()?;
        let mut worst = 0.0f64;
        for r in census.values() {
            for key in equivalent_params(&r.params) {
                let other = census.get(&key).ok_or_else(|| format!("missing {key:?}"))?;
                worst = worst.max((other.volume - r.volume).abs());
            }
        }
        Ok((
            worst <= 1e-8,
            format!("max spread within a class {worst:.1e}"),
        ))
    }

    fn lackenby(&self) -> Verdict {
        let census = self.census()?;
        let mut failures = Vec::new();
        let mut checked = 0;
        let mut slack = f64::INFINITY;
        for (&(p, q), r) in census {
            if q == 1 {
                continue;
            }
            checked += 1;
            let (lo, hi) =
                lackenby_bounds(&cf_positive(p as i64, q as i64).map_err(|e| e.to_string())?);
            if !(lo <= r.volume && r.volume <= hi) {
                failures.push(format!("K({p},{q})"));
            }
            slack = slack.min(r.volume - lo).min(hi - r.volume);
        }
        Ok((
            failures.is_empty(),
            format!(
                "{checked} knots, {} outside, min slack {slack:.3} {failures:?}",
                failures.len()
            ),
        ))
    }

    fn dilog_suite(&self) -> Verdict {
        let cfg = &self.cfg.volume.dilog;
        let d = |z: Complex64| bloch_wigner_with(z, cfg);
        let one = Complex64::new(1.0, 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed ^ 11);
        let mut five = 0.0f64;
        let mut conj = 0.0f64;
        for _ in 0..1000 {
            let x = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let y = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let r = d(x) - d(y) + d(y / x) - d((one - y) / (one - x))
                + d((one - y.inv()) / (one - x.inv()));
            five = five.max(r.abs());
            conj = conj.max((d(x.conj()) + d(x)).abs());
        }
        let cat = (d(Complex64::new(0.0, 1.0)) - catalan()).abs();
        Ok((
            five <= 1e-10 && conj <= 1e-12 && cat <= 1e-12,
            format!("five-term {five:.1e}, conjugation {conj:.1e}, D(i) - G {cat:.1e}"),
        ))
    }

    fn z_endpoints(&self) -> Verdict {
        let census = self.census()?;
        let mut worst = 0.0f64;
        for r in census.values() {
            let p = r.params.p() as usize;
            for rv in &r.per_root {
                let zs = z_sequence_with(&r.params, rv.root, &self.cfg.volume)
                    .map_err(|e| e.to_string())?;
                let a = zs.get(p - 1).distance(&ProjectivePoint::zero());
                let b = zs
                    .get(2 * p - 2)
                    .distance(&ProjectivePoint::finite(-rv.root.inv()));
                worst = worst.max(a).max(b);
            }
        }
        Ok((worst <= 1e-9, format!("max chordal distance {worst:.1e}")))
    }

    fn scan_and_figure(&self) -> Verdict {
        let start = Instant::now();
        let records = scan_with(49, &self.cfg.volume).map_err(|e| e.to_string())?;
        let t = start.elapsed().as_secs_f64();
        let expected: Vec<(u64, u64)> = valid_pairs(49).iter().map(|p| (p.p(), p.q())).collect();
        let got: Vec<(u64, u64)> = records.iter().map(|r| (r.p, r.q)).collect();
        let a = render_svg(&records, 49);
        let b = render_svg(&records, 49);
        let markers = a.matches("<circle").count();
        let rows = to_csv(&records).lines().count() - 1;
        let ok = got == expected
            && rows == expected.len()
            && markers == expected.len()
            && a == b
            && t < 60.0;
        Ok((
            ok,
            format!(
                "{} records in {t:.2} s, {markers} markers, figure deterministic: {}",
                records.len(),
                a == b
            ),
        ))
    }
}

pub fn table(outcomes: &[CheckOutcome]) -> String {
    let mut s = String::new();
    for o in outcomes {
        s.push_str(&o.to_string());
        s.push('\n');
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    s.push_str(&format!("{passed}/{} criteria passed\n", outcomes.len()));
    s
}
