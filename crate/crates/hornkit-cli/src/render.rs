//! Deterministic SVG figures: the Ore–Sato polygon with its lattice points,
//! and the supports of a family of Puiseux polynomial solutions.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use hornkit::{OreSatoPolygon, PuiseuxPolynomial, Rat, RatVec2};
use num_traits::ToPrimitive;

const UNIT: f64 = 40.0;
const PALETTE: [&str; 8] = ["#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"];

struct Frame {
    min: (f64, f64),
    max: (f64, f64),
}

impl Frame {
    fn x(&self, v: f64) -> f64 {
        (v - self.min.0 + 1.0) * UNIT
    }

    fn y(&self, v: f64) -> f64 {
        (self.max.1 - v + 1.0) * UNIT
    }

    fn width(&self) -> f64 {
        (self.max.0 - self.min.0 + 2.0) * UNIT
    }

    fn height(&self) -> f64 {
        (self.max.1 - self.min.1 + 2.0) * UNIT
    }

    fn open(&self, out: &mut String, title: &str) {
        let (w, h) = (self.width(), self.height());
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#
        );
        let _ = writeln!(out, "<title>{}</title>", escape(title));
        let _ = writeln!(out, r##"<rect x="0" y="0" width="{w:.0}" height="{h:.0}" fill="#ffffff"/>"##);
        let _ = writeln!(out, r##"<g stroke="#e6e6e6" stroke-width="1">"##);
        for i in self.min.0 as i64..=self.max.0 as i64 {
            let x = self.x(i as f64);
            let _ = writeln!(out, r#"<line x1="{x:.2}" y1="0" x2="{x:.2}" y2="{h:.0}"/>"#);
        }
        for j in self.min.1 as i64..=self.max.1 as i64 {
            let y = self.y(j as f64);
            let _ = writeln!(out, r#"<line x1="0" y1="{y:.2}" x2="{w:.0}" y2="{y:.2}"/>"#);
        }
        out.push_str("</g>\n");
        if self.min.0 <= 0.0 && self.max.0 >= 0.0 && self.min.1 <= 0.0 && self.max.1 >= 0.0 {
            let (ox, oy) = (self.x(0.0), self.y(0.0));
            let _ = writeln!(out, r##"<g stroke="#999999" stroke-width="1.5">"##);
            let _ = writeln!(out, r#"<line x1="0" y1="{oy:.2}" x2="{w:.0}" y2="{oy:.2}"/>"#);
            let _ = writeln!(out, r#"<line x1="{ox:.2}" y1="0" x2="{ox:.2}" y2="{h:.0}"/>"#);
            out.push_str("</g>\n");
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn f(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

pub fn polygon_svg(p: &OreSatoPolygon, title: &str) -> String {
    let (lo, hi) = p.bbox();
    let frame = Frame { min: (lo.a as f64, lo.b as f64), max: (hi.a as f64, hi.b as f64) };
    let mut out = String::new();
    frame.open(&mut out, title);
    let pts: Vec<String> =
        p.vertices.iter().map(|v| format!("{:.2},{:.2}", frame.x(v.a as f64), frame.y(v.b as f64))).collect();
    let _ =
        writeln!(out, r##"<polygon points="{}" fill="#dbe7f3" stroke="#1f4e79" stroke-width="2"/>"##, pts.join(" "));
    let mut lattice = p.lattice_points();
    lattice.sort();
    out.push_str("<g fill=\"#333333\">\n");
    for q in &lattice {
        let _ = writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="3"/>"#, frame.x(q.a as f64), frame.y(q.b as f64));
    }
    out.push_str("</g>\n<g fill=\"#c0392b\">\n");
    for v in &p.vertices {
        let _ = writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="5"/>"#, frame.x(v.a as f64), frame.y(v.b as f64));
    }
    out.push_str("</g>\n</svg>\n");
    out
}

/// Monomials are drawn as discs (filled red when persistent), polynomials
/// as unit lattice cells joining their support points.
pub fn supports_svg(solutions: &[(PuiseuxPolynomial, bool)], title: &str) -> String {
    let all: Vec<&RatVec2> = solutions.iter().flat_map(|(p, _)| p.terms.keys()).collect();
    let lo = |j: usize| all.iter().map(|e| f(e.get(j)).floor()).fold(0.0f64, f64::min);
    let hi = |j: usize| all.iter().map(|e| f(e.get(j)).ceil()).fold(0.0f64, f64::max);
    let frame = Frame { min: (lo(0), lo(1)), max: (hi(0), hi(1)) };
    let mut out = String::new();
    frame.open(&mut out, title);
    for (k, (p, persistent)) in solutions.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let _ = writeln!(out, r#"<g id="solution-{k}">"#);
        if p.len() == 1 {
            let e = p.terms.keys().next().expect("one term");
            let fill = if *persistent { "#c0392b" } else { "#ff7f0e" };
            let _ = writeln!(
                out,
                r##"<circle cx="{:.2}" cy="{:.2}" r="6" fill="{fill}" stroke="#000000" stroke-width="0.5"/>"##,
                frame.x(f(&e.x1)),
                frame.y(f(&e.x2))
            );
        } else {
            let support: BTreeSet<&RatVec2> = p.terms.keys().collect();
            for e in &support {
                for j in 0..2 {
                    let n = e.step(j, 1);
                    if support.contains(&n) {
                        let _ = writeln!(
                            out,
                            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="2"/>"#,
                            frame.x(f(&e.x1)),
                            frame.y(f(&e.x2)),
                            frame.x(f(&n.x1)),
                            frame.y(f(&n.x2))
                        );
                    }
                }
            }
            for e in &support {
                let _ = writeln!(
                    out,
                    r#"<rect x="{:.2}" y="{:.2}" width="6" height="6" fill="{color}"/>"#,
                    frame.x(f(&e.x1)) - 3.0,
                    frame.y(f(&e.x2)) - 3.0
                );
            }
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}
