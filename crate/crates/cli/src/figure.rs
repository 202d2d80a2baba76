//! Hand-written SVG scatter plot of `(q/p, V(p,q))`.

use std::fmt::Write;

use crate::scan::ScanRecord;

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;

const LEFT: f64 = 70.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 60.0;

/// Smallest whole number of volume units that fits every record, at least 1.
fn y_limit(records: &[ScanRecord]) -> u32 {
    let max = records.iter().map(|r| r.volume).fold(0.0, f64::max);
    (max.ceil() as u32).max(1)
}

pub fn render_svg(records: &[ScanRecord], pmax: u64) -> String {
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let ymax = y_limit(records);
    let sx = |x: f64| LEFT + x * plot_w;
    let sy = |y: f64| TOP + plot_h * (1.0 - y / f64::from(ymax));

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="30" font-family="sans-serif" font-size="16" text-anchor="middle">Volumes of two-bridge knots K(p,q), p &lt;= {pmax}</text>"#,
        WIDTH / 2.0
    );

    // axes
    let _ = writeln!(
        s,
        r#"<g stroke="black" stroke-width="1"><line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/><line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/></g>"#,
        sx(0.0),
        sy(0.0),
        sx(1.0),
        sy(0.0),
        sx(0.0),
        sy(0.0),
        sx(0.0),
        sy(f64::from(ymax))
    );
    let _ = writeln!(
        s,
        r#"<g font-family="sans-serif" font-size="12" fill="black">"#
    );
    for k in 0..=4 {
        let x = f64::from(k) / 4.0;
        let _ = writeln!(
            s,
            r#"<line x1="{0:.2}" y1="{1:.2}" x2="{0:.2}" y2="{2:.2}" stroke="black"/><text x="{0:.2}" y="{3:.2}" text-anchor="middle">{x:.2}</text>"#,
            sx(x),
            sy(0.0),
            sy(0.0) + 5.0,
            sy(0.0) + 20.0
        );
    }
    for k in 0..=ymax {
        let y = f64::from(k);
        let _ = writeln!(
            s,
            r#"<line x1="{0:.2}" y1="{1:.2}" x2="{2:.2}" y2="{1:.2}" stroke="black"/><text x="{3:.2}" y="{4:.2}" text-anchor="end">{k}</text>"#,
            sx(0.0) - 5.0,
            sy(y),
            sx(0.0),
            sx(0.0) - 8.0,
            sy(y) + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">q/p</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{0:.2}" text-anchor="middle" transform="rotate(-90 20 {0:.2})">volume</text>"#,
        TOP + plot_h / 2.0
    );
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g fill="steelblue" stroke="none">"#);
    for r in records {
        let _ = writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="2"><title>K({},{}) {:.6}</title></circle>"#,
            sx(r.ratio),
            sy(r.volume),
            r.p,
            r.q,
            r.volume
        );
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scan::scan;

    #[test]
    fn one_marker_per_record() {
        let records = scan(9).unwrap();
        let svg = render_svg(&records, 9);
        assert_eq!(svg.matches("<circle").count(), records.len());
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
    }

    #[test]
    fn single_torus_knot() {
        let records = scan(3).unwrap();
        let svg = render_svg(&records, 3);
        // q/p = 1/3 on the horizontal axis, volume 0 on the baseline
        let x = LEFT + (WIDTH - LEFT - RIGHT) / 3.0;
        let y = HEIGHT - BOTTOM;
        assert!(
            svg.contains(&format!(r#"<circle cx="{x:.2}" cy="{y:.2}""#)),
            "{svg}"
        );
    }

    #[test]
    fn deterministic() {
        let records = scan(15).unwrap();
        assert_eq!(render_svg(&records, 15), render_svg(&records, 15));
    }
}
