//! Plain SVG plots on `[-1, 1]^2`: a 512 x 512 canvas with axes, dots for
//! finite supports and line segments for curve supports. Every mark carries
//! its data coordinates as attributes so plots can be checked numerically.
//! Output depends only on the input.

use std::fmt::Write;

use crate::ergodic::Segment;
use crate::measure::FiniteMeasure;
use crate::rational::{format_rational, to_f64};

const SIZE: f64 = 512.0;
const HALF: f64 = 256.0;
const MAX_RADIUS: f64 = 14.0;

fn px(x: f64) -> f64 {
    HALF + HALF * x
}

fn py(y: f64) -> f64 {
    HALF - HALF * y
}

fn header(title: &str) -> String {
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    writeln!(s, "<title>{}</title>", escape(title)).unwrap();
    writeln!(
        s,
        r#"<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>"#
    )
    .unwrap();
    writeln!(
        s,
        r##"<g class="axes" stroke="#888" stroke-width="1">
<line x1="0" y1="{HALF}" x2="{SIZE}" y2="{HALF}"/>
<line x1="{HALF}" y1="0" x2="{HALF}" y2="{SIZE}"/>
</g>"##
    )
    .unwrap();
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Dots at the support of `mu`, dot area proportional to weight.
pub fn measure_svg(mu: &FiniteMeasure, title: &str) -> String {
    let mut s = header(title);
    let max_w = mu.iter().map(|(_, _, w)| to_f64(w)).fold(0.0, f64::max);
    s.push_str("<g class=\"support\" fill=\"#1f4e9c\">\n");
    for (x, y, w) in mu.iter() {
        let (fx, fy, fw) = (to_f64(x), to_f64(y), to_f64(w));
        let r = if max_w > 0.0 {
            MAX_RADIUS * (fw / max_w).sqrt()
        } else {
            0.0
        };
        writeln!(
            s,
            r#"<circle cx="{:.6}" cy="{:.6}" r="{:.6}" data-x="{}" data-y="{}" data-weight="{}"/>"#,
            px(fx),
            py(fy),
            r,
            format_rational(x),
            format_rational(y),
            format_rational(w)
        )
        .unwrap();
    }
    s.push_str("</g>\n</svg>\n");
    s
}

/// Line segments (data coordinates written with 15 significant digits).
pub fn segments_svg(segments: &[Segment], title: &str) -> String {
    let mut s = header(title);
    s.push_str("<g class=\"support\" stroke=\"#1f4e9c\" stroke-width=\"2\">\n");
    for seg in segments {
        let (a, b) = (seg.start, seg.end);
        writeln!(
            s,
            r#"<line x1="{:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}" data-x1="{:.15e}" data-y1="{:.15e}" data-x2="{:.15e}" data-y2="{:.15e}"/>"#,
            px(a.0),
            py(a.1),
            px(b.0),
            py(b.1),
            a.0,
            a.1,
            b.0,
            b.1
        )
        .unwrap();
    }
    s.push_str("</g>\n</svg>\n");
    s
}

/// Pulls `attr="value"` out of every element of the given tag.
pub fn attribute_values(svg: &str, tag: &str, attr: &str) -> Vec<String> {
    let open = format!("<{tag} ");
    let key = format!(" {attr}=\"");
    svg.lines()
        .filter(|l| l.trim_start().starts_with(&open))
        .filter_map(|l| {
            let start = l.find(&key)? + key.len();
            let len = l[start..].find('"')?;
            Some(l[start..start + len].to_string())
        })
        .collect()
}
