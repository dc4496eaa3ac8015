//! Deterministic SVG rendering of regions.
//!
//! Output is byte-stable: coordinates are rendered from exact scalars with
//! fixed-precision decimal formatting, element order follows the canonical
//! constraint/piece order, and no floating-point formatting is involved
//! except for the discrete arc flags.

use num_bigint::BigInt;
use num_traits::Signed;

use super::constraint::{square_edge_circlines, SignSet};
use super::region::{Piece, Region, Segment};
use crate::quad::{QuadComplex, QuadScalar};

/// Visual style for one region.
#[derive(Clone, Debug)]
pub struct Style {
    pub fill: Option<String>,
    pub stroke: String,
}

impl Style {
    pub fn filled(fill: &str, stroke: &str) -> Style {
        Style {
            fill: Some(fill.to_string()),
            stroke: stroke.to_string(),
        }
    }

    pub fn stroked(stroke: &str) -> Style {
        Style {
            fill: None,
            stroke: stroke.to_string(),
        }
    }
}

const VIEW: f64 = 1.6;

/// Fixed-precision decimal rendering of an exact scalar (6 places,
/// round-half-up on the scaled integer).
fn dec(x: &QuadScalar) -> String {
    let places: i64 = 6;
    let scale = QuadScalar::from_bigint(BigInt::from(10u32.pow(places as u32)));
    let scaled = (x.clone() * scale).round_half_up();
    let neg = scaled.is_negative();
    let abs = scaled.abs();
    let s = abs.to_string();
    let (int_part, frac_part) = if s.len() as i64 <= places {
        ("0".to_string(), format!("{:0>6}", s))
    } else {
        let split = s.len() - places as usize;
        (s[..split].to_string(), s[split..].to_string())
    };
    let frac = frac_part.trim_end_matches('0');
    let body = if frac.is_empty() {
        int_part
    } else {
        format!("{int_part}.{frac}")
    };
    if neg && body != "0" {
        format!("-{body}")
    } else {
        body
    }
}

/// Math coordinates to SVG coordinates (y axis flipped).
fn xy(p: &QuadComplex) -> (String, String) {
    (dec(&p.re), dec(&-p.im.clone()))
}

fn seg_path(seg: &Segment) -> String {
    if seg.carrier.is_line() {
        let sp = seg.span.as_ref().expect("line pieces are bounded");
        let (x1, y1) = xy(&sp.start);
        let (x2, y2) = xy(&sp.end);
        return format!("M {x1} {y1} L {x2} {y2}");
    }
    let center = seg.carrier.center().expect("circle");
    let r2 = seg.carrier.radius_sqr().expect("circle");
    let r = dec_sqrt(&r2);
    match &seg.span {
        None => String::new(), // rendered as a <circle> by the caller
        Some(sp) if sp.start == sp.end => String::new(),
        Some(sp) => {
            let (x1, y1) = xy(&sp.start);
            let (x2, y2) = xy(&sp.end);
            // Discrete arc flags from float angles; exactness is not needed
            // for flag selection.
            let (cx, cy) = center.to_f64_pair();
            let ang = |p: &QuadComplex| {
                let (px, py) = p.to_f64_pair();
                (py - cy).atan2(px - cx)
            };
            let tau = std::f64::consts::TAU;
            let da = |from: f64, to: f64| ((to - from) % tau + tau) % tau;
            let a_s = ang(&sp.start);
            let d_end = da(a_s, ang(&sp.end));
            let d_wit = da(a_s, ang(&sp.witness));
            let ccw = d_wit < d_end;
            let theta = if ccw { d_end } else { tau - d_end };
            let large = if theta > std::f64::consts::PI { 1 } else { 0 };
            let sweep = if ccw { 0 } else { 1 };
            format!("M {x1} {y1} A {r} {r} 0 {large} {sweep} {x2} {y2}")
        }
    }
}

/// Decimal rendering of sqrt(x) for radii (x rational in practice; falls
/// back to exact-in-field square roots, then to scaled integer sqrt).
fn dec_sqrt(x: &QuadScalar) -> String {
    if let Some(r) = x.try_sqrt() {
        return dec(&r);
    }
    // sqrt via integer arithmetic on the scaled value: deterministic.
    let scale = BigInt::from(10u64.pow(12));
    let scaled = (x.clone() * QuadScalar::from_bigint(scale)).round_half_up();
    let root = scaled.sqrt(); // floor sqrt of x * 10^12
    let q = QuadScalar::from_bigint(root)
        / QuadScalar::from_bigint(BigInt::from(10u64.pow(6)));
    dec(&q)
}

fn render_region(out: &mut String, region: &Region, style: &Style) {
    match region {
        Region::Empty => {}
        Region::TwoDim { constraints } => {
            let edges = square_edge_circlines();
            let has_square = edges
                .iter()
                .all(|e| constraints.iter().any(|c| &c.circ == e));
            // Base outline: the square when present, else the viewport.
            let base = if has_square {
                "M -0.5 -0.5 L 0.5 -0.5 L 0.5 0.5 L -0.5 0.5 Z".to_string()
            } else {
                format!(
                    "M {v} {v} L {w} {v} L {w} {w} L {v} {w} Z",
                    v = -VIEW,
                    w = VIEW
                )
            };
            let mut d = base;
            // Excluded open/closed disks become cutout subpaths.
            for c in constraints {
                if c.circ.is_line() || c.allow.contains_sign(-1) {
                    continue;
                }
                let center = c.circ.center().expect("circle");
                let r = dec_sqrt(&c.circ.radius_sqr().expect("circle"));
                let (cx, cy) = xy(&center);
                // Two-arc subpath describing the full circle.
                let left = dec(&(center.re.clone() - radius_scalar(&c.circ)));
                let right = dec(&(center.re.clone() + radius_scalar(&c.circ)));
                d.push_str(&format!(
                    " M {left} {cy} A {r} {r} 0 1 0 {right} {cy} A {r} {r} 0 1 0 {left} {cy} Z"
                ));
                let _ = (cx,);
            }
            let fill = style.fill.clone().unwrap_or_else(|| "none".into());
            out.push_str(&format!(
                "<path d=\"{d}\" fill=\"{fill}\" fill-rule=\"evenodd\" stroke=\"{}\" stroke-width=\"0.01\"/>\n",
                style.stroke
            ));
            // Stroke every constraint circline for reference.
            for c in constraints {
                render_circline_outline(out, c, style);
            }
        }
        Region::Degenerate { pieces } => {
            for p in pieces {
                match p {
                    Piece::Point(z) => {
                        let (x, y) = xy(z);
                        out.push_str(&format!(
                            "<circle cx=\"{x}\" cy=\"{y}\" r=\"0.02\" fill=\"{}\"/>\n",
                            style.stroke
                        ));
                    }
                    Piece::Seg(seg) => {
                        let d = seg_path(seg);
                        if d.is_empty() {
                            // Full (possibly punctured) circle.
                            let center = seg.carrier.center().expect("circle");
                            let (x, y) = xy(&center);
                            let r = dec_sqrt(&seg.carrier.radius_sqr().expect("circle"));
                            out.push_str(&format!(
                                "<circle cx=\"{x}\" cy=\"{y}\" r=\"{r}\" fill=\"none\" stroke=\"{}\" stroke-width=\"0.02\"/>\n",
                                style.stroke
                            ));
                        } else {
                            out.push_str(&format!(
                                "<path d=\"{d}\" fill=\"none\" stroke=\"{}\" stroke-width=\"0.02\"/>\n",
                                style.stroke
                            ));
                        }
                    }
                }
            }
        }
    }
}

fn radius_scalar(c: &super::circline::Circline) -> QuadScalar {
    let r2 = c.radius_sqr().expect("circle");
    r2.try_sqrt().unwrap_or_else(|| {
        // Deterministic rational approximation for rendering only.
        let scale = BigInt::from(10u64.pow(12));
        let scaled = (r2 * QuadScalar::from_bigint(scale)).round_half_up();
        QuadScalar::from_bigint(scaled.sqrt())
            / QuadScalar::from_bigint(BigInt::from(10u64.pow(6)))
    })
}

fn render_circline_outline(out: &mut String, c: &super::constraint::Constraint, style: &Style) {
    if c.allow == SignSet::ALL {
        return;
    }
    if c.circ.is_line() {
        // Clip the line to the viewport box.
        let b = c.circ.coeff_b();
        let cc = c.circ.coeff_c();
        // 2(b.re x + b.im y) + c = 0
        let (bx, by) = (b.re.to_f64(), b.im.to_f64());
        let k = cc.to_f64();
        let mut pts = Vec::new();
        for v in [-VIEW, VIEW] {
            if by.abs() > 1e-12 {
                let y = -(k + 2.0 * bx * v) / (2.0 * by);
                if y.abs() <= VIEW + 1e-9 {
                    pts.push((v, y));
                }
            }
            if bx.abs() > 1e-12 {
                let x = -(k + 2.0 * by * v) / (2.0 * bx);
                if x.abs() <= VIEW + 1e-9 {
                    pts.push((x, v));
                }
            }
        }
        pts.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9);
        if pts.len() >= 2 {
            out.push_str(&format!(
                "<line x1=\"{:.6}\" y1=\"{:.6}\" x2=\"{:.6}\" y2=\"{:.6}\" stroke=\"{}\" stroke-width=\"0.005\" stroke-dasharray=\"0.03 0.02\"/>\n",
                pts[0].0, -pts[0].1, pts[1].0, -pts[1].1, style.stroke
            ));
        }
    } else {
        let center = c.circ.center().expect("circle");
        let (x, y) = xy(&center);
        let r = dec_sqrt(&c.circ.radius_sqr().expect("circle"));
        out.push_str(&format!(
            "<circle cx=\"{x}\" cy=\"{y}\" r=\"{r}\" fill=\"none\" stroke=\"{}\" stroke-width=\"0.005\" stroke-dasharray=\"0.03 0.02\"/>\n",
            style.stroke
        ));
    }
}

/// Renders one panel of styled regions into a standalone SVG document.
pub fn emit_svg(items: &[(Region, Style)]) -> String {
    emit_svg_panels(&[("".to_string(), items.to_vec())])
}

/// Renders several panels side by side.
pub fn emit_svg_panels(panels: &[(String, Vec<(Region, Style)>)]) -> String {
    let n = panels.len().max(1);
    let w = 2.0 * VIEW;
    let total_w = w * n as f64;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n",
        -VIEW,
        -VIEW,
        total_w,
        2.0 * VIEW
    ));
    for (i, (title, items)) in panels.iter().enumerate() {
        out.push_str(&format!("<g transform=\"translate({:.1} 0)\">\n", w * i as f64));
        out.push_str(&format!(
            "<rect x=\"{v}\" y=\"{v}\" width=\"{w:.1}\" height=\"{w:.1}\" fill=\"white\" stroke=\"none\"/>\n",
            v = -VIEW,
        ));
        for (region, style) in items {
            render_region(&mut out, region, style);
        }
        if !title.is_empty() {
            out.push_str(&format!(
                "<text x=\"{}\" y=\"{}\" font-size=\"0.12\" fill=\"black\">{}</text>\n",
                -VIEW + 0.05,
                VIEW - 0.05,
                title
            ));
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_input_is_valid_svg() {
        let svg = emit_svg(&[]);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn square_renders_one_path() {
        let svg = emit_svg(&[(Region::square(), Style::filled("#ccd", "#336"))]);
        assert!(svg.contains("fill-rule=\"evenodd\""));
        assert!(svg.contains("M -0.5 -0.5"));
    }

    #[test]
    fn output_is_deterministic() {
        let items = [(Region::square(), Style::filled("#eee", "#000"))];
        assert_eq!(emit_svg(&items), emit_svg(&items));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(dec(&QuadScalar::ratio(1, 2)), "0.5");
        assert_eq!(dec(&QuadScalar::ratio(-1, 3)), "-0.333333");
        assert_eq!(dec(&QuadScalar::from_int(2)), "2");
        // sqrt(3) to six places
        assert_eq!(dec(&QuadScalar::sqrt_d(3)), "1.732051");
    }
}
