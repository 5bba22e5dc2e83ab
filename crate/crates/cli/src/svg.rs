//! Hand-written SVG 1.1 figures: cluster maps, reachability bars and the
//! sweep line chart. Output depends only on the inputs, so reruns are
//! byte-identical.

use std::fmt::Write;

use epiclust::clustering::{Label, ReachabilityPlot};
use epiclust::evaluation::SweepResult;
use epiclust::geo::{Equirectangular, GeoPoint, PlanarPoint};

use crate::output::GENERATOR;

/// Cluster colours, cycled by cluster id.
pub const PALETTE: [&str; 12] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#bcbd22", "#17becf", "#393b79",
    "#ad494a", "#637939",
];
const NOISE: &str = "#8c8c8c";
const NOISE_FILL: &str = "#cccccc";
const FONT: &str = "font-family=\"Helvetica, Arial, sans-serif\"";

pub fn cluster_color(label: Label) -> &'static str {
    match label {
        Label::Cluster(c) => PALETTE[c % PALETTE.len()],
        Label::Noise => NOISE,
    }
}

/// Two decimals, with `-0.00` folded into `0.00`.
fn num(x: f64) -> String {
    let s = format!("{x:.2}");
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

/// Short tick label: up to three decimals, trailing zeros dropped.
fn tick(x: f64) -> String {
    let s = format!("{x:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

#[derive(Debug, Clone, Copy)]
struct Rect {
    x: f64,
    y: f64,
    w: f64,
    h: f64,
}

struct Svg {
    width: f64,
    height: f64,
    defs: String,
    body: String,
}

impl Svg {
    fn new(width: f64, height: f64) -> Self {
        Svg {
            width,
            height,
            defs: String::new(),
            body: String::new(),
        }
    }

    fn push(&mut self, element: &str) {
        self.body.push_str(element);
        self.body.push('\n');
    }

    fn text(&mut self, x: f64, y: f64, size: u32, anchor: &str, content: &str) {
        self.push(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"{size}\" text-anchor=\"{anchor}\" {FONT}>{}</text>",
            num(x),
            num(y),
            escape(content)
        ));
    }

    fn line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, style: &str) {
        self.push(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" {style}/>",
            num(x1),
            num(y1),
            num(x2),
            num(y2)
        ));
    }

    fn marker(&mut self, x: f64, y: f64, r: f64, label: Label) {
        let style = match label {
            Label::Cluster(_) => format!("fill=\"{}\" fill-opacity=\"0.85\"", cluster_color(label)),
            Label::Noise => format!("fill=\"none\" stroke=\"{NOISE}\" stroke-width=\"1.2\""),
        };
        self.push(&format!("<circle cx=\"{}\" cy=\"{}\" r=\"{}\" {style}/>", num(x), num(y), num(r)));
    }

    fn finish(self) -> String {
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(out, "<!-- generator: {GENERATOR} -->");
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">",
            w = self.width,
            h = self.height
        );
        if !self.defs.is_empty() {
            let _ = writeln!(out, "<defs>\n{}</defs>", self.defs);
        }
        let _ = writeln!(out, "<rect width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>", self.width, self.height);
        out.push_str(&self.body);
        out.push_str("</svg>\n");
        out
    }
}

/// Planar km coordinates fitted into a rectangle at equal x/y scale.
struct MapFrame {
    scale: f64,
    cx: f64,
    cy: f64,
    area: Rect,
}

impl MapFrame {
    fn fit(points: &[PlanarPoint], area: Rect) -> Self {
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for p in points {
            x0 = x0.min(p.x);
            x1 = x1.max(p.x);
            y0 = y0.min(p.y);
            y1 = y1.max(p.y);
        }
        if points.is_empty() {
            (x0, x1, y0, y1) = (0.0, 0.0, 0.0, 0.0);
        }
        let dx = (x1 - x0).max(1.0);
        let dy = (y1 - y0).max(1.0);
        let scale = (area.w * 0.9 / dx).min(area.h * 0.9 / dy);
        MapFrame {
            scale,
            cx: (x0 + x1) / 2.0,
            cy: (y0 + y1) / 2.0,
            area,
        }
    }

    fn place(&self, p: PlanarPoint) -> (f64, f64) {
        (
            self.area.x + self.area.w / 2.0 + (p.x - self.cx) * self.scale,
            self.area.y + self.area.h / 2.0 - (p.y - self.cy) * self.scale,
        )
    }
}

/// Largest 1, 2 or 5 × 10^k not above `max`.
fn nice_length(max: f64) -> f64 {
    let base = 10f64.powf(max.log10().floor());
    [5.0, 2.0, 1.0].into_iter().map(|m| m * base).find(|&l| l <= max).unwrap_or(base)
}

/// Smallest 1, 2 or 5 × 10^k not below `min`.
fn nice_step(min: f64) -> f64 {
    let base = 10f64.powf(min.log10().floor());
    [1.0, 2.0, 5.0, 10.0].into_iter().map(|m| m * base).find(|&l| l >= min).unwrap_or(10.0 * base)
}

fn project(points: &[GeoPoint]) -> epiclust::Result<Vec<PlanarPoint>> {
    let projection = Equirectangular::centered_on(points)?;
    Ok(points.iter().map(|&p| projection.project(p)).collect())
}

fn draw_map(svg: &mut Svg, planar: &[PlanarPoint], labels: &[Label], area: Rect, radius: f64) {
    svg.push(&format!(
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#dddddd\"/>",
        num(area.x),
        num(area.y),
        num(area.w),
        num(area.h)
    ));
    let frame = MapFrame::fit(planar, area);
    for (p, &label) in planar.iter().zip(labels) {
        if !label.is_noise() {
            let (x, y) = frame.place(*p);
            svg.marker(x, y, radius, label);
        }
    }
    for (p, &label) in planar.iter().zip(labels) {
        if label.is_noise() {
            let (x, y) = frame.place(*p);
            svg.marker(x, y, radius, label);
        }
    }

    let km = nice_length(area.w * 0.25 / frame.scale);
    let px = km * frame.scale;
    let (x, y) = (area.x + 12.0, area.y + area.h - 12.0);
    let style = "stroke=\"#333333\" stroke-width=\"2\"";
    svg.line(x, y, x + px, y, style);
    svg.line(x, y - 4.0, x, y + 1.0, style);
    svg.line(x + px, y - 4.0, x + px, y + 1.0, style);
    svg.text(x + px / 2.0, y - 7.0, 11, "middle", &format!("{} km", tick(km)));
}

/// Cluster map of `points` coloured by `labels`, NOISE as hollow grey rings.
pub fn scatter(points: &[GeoPoint], labels: &[Label], title: &str) -> epiclust::Result<String> {
    let planar = project(points)?;
    let mut svg = Svg::new(900.0, 640.0);
    svg.text(20.0, 30.0, 18, "start", title);
    draw_map(&mut svg, &planar, labels, Rect { x: 20.0, y: 50.0, w: 680.0, h: 570.0 }, 4.0);

    let mut counts: Vec<(Label, usize)> = Vec::new();
    for &l in labels {
        match counts.iter_mut().find(|(k, _)| *k == l) {
            Some((_, n)) => *n += 1,
            None => counts.push((l, 1)),
        }
    }
    counts.sort();
    const MAX_ROWS: usize = 26;
    for (row, (label, n)) in counts.iter().take(MAX_ROWS).enumerate() {
        let y = 70.0 + row as f64 * 21.0;
        svg.marker(725.0, y - 4.0, 5.0, *label);
        let name = match label {
            Label::Cluster(c) => format!("cluster {c}"),
            Label::Noise => "noise".to_string(),
        };
        svg.text(738.0, y, 13, "start", &format!("{name} ({n})"));
    }
    if counts.len() > MAX_ROWS {
        let y = 70.0 + MAX_ROWS as f64 * 21.0;
        svg.text(738.0, y, 13, "start", &format!("+{} more", counts.len() - MAX_ROWS));
    }
    Ok(svg.finish())
}

/// One cell of [`panels`].
pub struct Panel<'a> {
    pub title: String,
    pub outcome: Result<&'a [Label], String>,
}

/// 2×2 grid of cluster maps sharing one projection.
pub fn panels(points: &[GeoPoint], cells: &[Panel<'_>]) -> epiclust::Result<String> {
    let planar = project(points)?;
    let mut svg = Svg::new(1000.0, 860.0);
    for (i, cell) in cells.iter().enumerate().take(4) {
        let area = Rect {
            x: 20.0 + (i % 2) as f64 * 490.0,
            y: 50.0 + (i / 2) as f64 * 410.0,
            w: 470.0,
            h: 370.0,
        };
        svg.text(area.x, area.y - 12.0, 15, "start", &cell.title);
        match &cell.outcome {
            Ok(labels) => draw_map(&mut svg, &planar, labels, area, 3.0),
            Err(message) => {
                svg.push(&format!(
                    "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#fff5f5\" stroke=\"#d62728\"/>",
                    num(area.x),
                    num(area.y),
                    num(area.w),
                    num(area.h)
                ));
                svg.text(area.x + area.w / 2.0, area.y + area.h / 2.0, 14, "middle", &format!("failed: {message}"));
            }
        }
    }
    Ok(svg.finish())
}

/// Reachability bars in OPTICS order. UNDEFINED values are drawn hatched at
/// 1.05× the largest finite reachability.
pub fn reachability(plot: &ReachabilityPlot, labels: &[Label], eps_cut: f64, unit: &str, title: &str) -> String {
    let mut svg = Svg::new(900.0, 420.0);
    svg.defs.push_str(
        "<pattern id=\"hatch\" width=\"6\" height=\"6\" patternUnits=\"userSpaceOnUse\" patternTransform=\"rotate(45)\">\n\
         <rect width=\"6\" height=\"6\" fill=\"#ffffff\"/>\n\
         <line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#555555\" stroke-width=\"2\"/>\n\
         </pattern>\n",
    );
    svg.text(20.0, 28.0, 18, "start", title);
    let area = Rect { x: 70.0, y: 45.0, w: 800.0, h: 320.0 };

    let max_finite = plot.reachability.iter().flatten().copied().fold(0.0, f64::max);
    let max_finite = if max_finite > 0.0 { max_finite } else { eps_cut.max(1.0) };
    let undefined = 1.05 * max_finite;
    let top = 1.1 * max_finite.max(eps_cut.min(undefined));
    let y_of = |v: f64| area.y + area.h - v / top * area.h;

    let step = nice_step(top / 5.0);
    for i in 0..=(top / step).floor() as usize {
        let v = step * i as f64;
        let y = y_of(v);
        svg.line(area.x - 4.0, y, area.x + area.w, y, "stroke=\"#eeeeee\"");
        svg.text(area.x - 8.0, y + 4.0, 11, "end", &tick(v));
    }
    let n = plot.ordering.len().max(1);
    let bw = area.w / n as f64;
    for (pos, (&point, r)) in plot.ordering.iter().zip(&plot.reachability).enumerate() {
        let label = labels[point];
        let fill = match label {
            Label::Noise => NOISE_FILL,
            _ => cluster_color(label),
        };
        let (value, style) = match r {
            Some(v) => (*v, format!("fill=\"{fill}\"")),
            None => (undefined, format!("fill=\"url(#hatch)\" stroke=\"{fill}\" stroke-width=\"0.8\"")),
        };
        let y = y_of(value);
        svg.push(&format!(
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" {style}/>",
            num(area.x + pos as f64 * bw),
            num(y),
            num((bw * 0.9).max(0.5)),
            num(area.y + area.h - y)
        ));
    }
    if eps_cut <= top {
        let y = y_of(eps_cut);
        svg.line(area.x, y, area.x + area.w, y, "stroke=\"#d62728\" stroke-dasharray=\"6 4\"");
        svg.text(area.x + area.w, y - 5.0, 12, "end", &format!("eps' = {} {unit}", tick(eps_cut)));
    }
    svg.line(area.x, area.y + area.h, area.x + area.w, area.y + area.h, "stroke=\"#333333\"");
    svg.line(area.x, area.y, area.x, area.y + area.h, "stroke=\"#333333\"");
    svg.text(area.x + area.w / 2.0, area.y + area.h + 30.0, 13, "middle", "OPTICS ordering");
    svg.push(&format!(
        "<text x=\"18\" y=\"{}\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 {})\" {FONT}>reachability ({unit})</text>",
        num(area.y + area.h / 2.0),
        num(area.y + area.h / 2.0)
    ));
    svg.finish()
}

/// Cluster count against eps, one line per min_pts.
pub fn sweep_chart(result: &SweepResult, unit: &str, title: &str) -> String {
    let mut svg = Svg::new(800.0, 480.0);
    svg.text(20.0, 28.0, 18, "start", title);
    let area = Rect { x: 70.0, y: 50.0, w: 560.0, h: 360.0 };

    let ok: Vec<(f64, usize, usize)> = result
        .rows
        .iter()
        .filter_map(|r| r.outcome.as_ref().ok().map(|m| (r.eps, r.min_pts, m.num_clusters)))
        .collect();
    let mut min_pts: Vec<usize> = Vec::new();
    for &(_, m, _) in &ok {
        if !min_pts.contains(&m) {
            min_pts.push(m);
        }
    }
    let mut eps: Vec<f64> = ok.iter().map(|r| r.0).collect();
    eps.sort_by(f64::total_cmp);
    eps.dedup();
    let (x0, x1) = match (eps.first(), eps.last()) {
        (Some(&a), Some(&b)) if b > a => (a, b),
        (Some(&a), _) => (a - 0.5, a + 0.5),
        _ => (0.0, 1.0),
    };
    let y_max = ok.iter().map(|r| r.2).max().unwrap_or(0) + 1;
    let x_of = |v: f64| area.x + (v - x0) / (x1 - x0) * area.w;
    let y_of = |v: f64| area.y + area.h - v / y_max as f64 * area.h;

    let step = y_max.div_ceil(8).max(1);
    for v in (0..=y_max).step_by(step) {
        let y = y_of(v as f64);
        svg.line(area.x - 4.0, y, area.x + area.w, y, "stroke=\"#eeeeee\"");
        svg.text(area.x - 8.0, y + 4.0, 11, "end", &v.to_string());
    }
    let ticks: Vec<f64> = if !eps.is_empty() && eps.len() <= 11 {
        eps.clone()
    } else {
        (0..=5).map(|i| x0 + (x1 - x0) * i as f64 / 5.0).collect()
    };
    for v in ticks {
        let x = x_of(v);
        svg.line(x, area.y + area.h, x, area.y + area.h + 4.0, "stroke=\"#333333\"");
        svg.text(x, area.y + area.h + 18.0, 11, "middle", &tick(v));
    }
    svg.line(area.x, area.y + area.h, area.x + area.w, area.y + area.h, "stroke=\"#333333\"");
    svg.line(area.x, area.y, area.x, area.y + area.h, "stroke=\"#333333\"");
    svg.text(area.x + area.w / 2.0, area.y + area.h + 40.0, 13, "middle", &format!("eps ({unit})"));
    svg.push(&format!(
        "<text x=\"22\" y=\"{}\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 22 {})\" {FONT}>clusters</text>",
        num(area.y + area.h / 2.0),
        num(area.y + area.h / 2.0)
    ));

    for (i, &m) in min_pts.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut series: Vec<(f64, usize)> = ok.iter().filter(|r| r.1 == m).map(|r| (r.0, r.2)).collect();
        series.sort_by(|a, b| a.0.total_cmp(&b.0));
        let path: Vec<String> = series
            .iter()
            .map(|&(e, c)| format!("{},{}", num(x_of(e)), num(y_of(c as f64))))
            .collect();
        svg.push(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"/>",
            path.join(" ")
        ));
        for &(e, c) in &series {
            svg.push(&format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"3.5\" fill=\"{color}\"/>",
                num(x_of(e)),
                num(y_of(c as f64))
            ));
        }
        let y = area.y + 10.0 + i as f64 * 20.0;
        svg.line(650.0, y - 4.0, 672.0, y - 4.0, &format!("stroke=\"{color}\" stroke-width=\"2\""));
        svg.text(678.0, y, 12, "start", &format!("min_pts = {m}"));
    }
    svg.finish()
}
