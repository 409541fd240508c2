//! Dependency-free SVG rendering of degrees-of-freedom regions.
//!
//! Exact vertices are converted to pixels only here, at render time.
//! Regions are drawn largest-first (by exact area, ties broken by family
//! name) so nested regions remain visible, and the output is byte-identical
//! for identical inputs.

use crate::config::AntennaConfig;
use crate::rational::{rat_to_f64, Rat};
use crate::region::{DofRegion, Family};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 540.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 30.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 60.0;

/// Fixed per-family colors (stable across plots).
pub fn family_color(family: Family) -> &'static str {
    match family {
        Family::PCsit => "#1f77b4",
        Family::FbDCsit => "#2ca02c",
        Family::DCsit => "#d62728",
        Family::NoCsitFixture => "#9467bd",
    }
}

fn px(v: f64) -> String {
    format!("{v:.2}")
}

/// Renders the given regions of one configuration as a standalone SVG
/// document.
pub fn render_regions(cfg: &AntennaConfig, regions: &[DofRegion]) -> String {
    let mut ordered: Vec<&DofRegion> = regions.iter().collect();
    ordered.sort_by(|a, b| {
        b.double_area()
            .cmp(&a.double_area())
            .then_with(|| a.family().as_str().cmp(b.family().as_str()))
    });
    // Coincident regions would stack into one visually indistinguishable
    // shape; draw (and list) only the first of each.
    let mut seen: Vec<&DofRegion> = Vec::new();
    ordered.retain(|r| {
        if seen.iter().any(|s| s.vertices() == r.vertices()) {
            false
        } else {
            seen.push(*r);
            true
        }
    });

    let max_coord = |pick: fn(&(Rat, Rat)) -> &Rat| -> f64 {
        ordered
            .iter()
            .flat_map(|r| r.vertices().iter().map(pick))
            .map(rat_to_f64)
            .fold(1.0_f64, f64::max)
    };
    let xmax = max_coord(|p| &p.0).ceil();
    let ymax = max_coord(|p| &p.1).ceil();
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let to_x = |x: f64| MARGIN_LEFT + x / xmax * plot_w;
    let to_y = |y: f64| HEIGHT - MARGIN_BOTTOM - y / ymax * plot_h;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"16\">DoF regions for {cfg}</text>\n",
        px(WIDTH / 2.0)
    ));

    // Grid and ticks at integer coordinates.
    let x_step = (xmax / 8.0).ceil().max(1.0);
    let y_step = (ymax / 8.0).ceil().max(1.0);
    let mut t = 0.0;
    while t <= xmax + 1e-9 {
        let x = to_x(t);
        svg.push_str(&format!(
            "<line x1=\"{x}\" y1=\"{y1}\" x2=\"{x}\" y2=\"{y2}\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n",
            x = px(x),
            y1 = px(MARGIN_TOP),
            y2 = px(HEIGHT - MARGIN_BOTTOM)
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
             font-size=\"12\">{t}</text>\n",
            px(x),
            px(HEIGHT - MARGIN_BOTTOM + 18.0)
        ));
        t += x_step;
    }
    let mut t = 0.0;
    while t <= ymax + 1e-9 {
        let y = to_y(t);
        svg.push_str(&format!(
            "<line x1=\"{x1}\" y1=\"{y}\" x2=\"{x2}\" y2=\"{y}\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n",
            y = px(y),
            x1 = px(MARGIN_LEFT),
            x2 = px(WIDTH - MARGIN_RIGHT)
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-family=\"sans-serif\" \
             font-size=\"12\">{t}</text>\n",
            px(MARGIN_LEFT - 8.0),
            px(y + 4.0)
        ));
        t += y_step;
    }

    // Axes and labels.
    svg.push_str(&format!(
        "<line x1=\"{l}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n",
        l = px(MARGIN_LEFT),
        r = px(WIDTH - MARGIN_RIGHT),
        b = px(HEIGHT - MARGIN_BOTTOM)
    ));
    svg.push_str(&format!(
        "<line x1=\"{l}\" y1=\"{t}\" x2=\"{l}\" y2=\"{b}\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n",
        l = px(MARGIN_LEFT),
        t = px(MARGIN_TOP),
        b = px(HEIGHT - MARGIN_BOTTOM)
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"14\" font-style=\"italic\">d1</text>\n",
        px(MARGIN_LEFT + plot_w / 2.0),
        px(HEIGHT - 16.0)
    ));
    svg.push_str(&format!(
        "<text x=\"20\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"14\" font-style=\"italic\" transform=\"rotate(-90 20 {mid})\">d2</text>\n",
        px(MARGIN_TOP + plot_h / 2.0),
        mid = px(MARGIN_TOP + plot_h / 2.0)
    ));

    // Region polygons, largest first.
    for region in &ordered {
        let color = family_color(region.family());
        let points: Vec<String> = region
            .vertices()
            .iter()
            .map(|(x, y)| format!("{},{}", px(to_x(rat_to_f64(x))), px(to_y(rat_to_f64(y)))))
            .collect();
        svg.push_str(&format!(
            "<polygon points=\"{}\" fill=\"{color}\" fill-opacity=\"0.18\" stroke=\"{color}\" \
             stroke-width=\"2\"/>\n",
            points.join(" ")
        ));
    }

    // Legend, top-right, in draw order.
    let legend_x = WIDTH - MARGIN_RIGHT - 170.0;
    for (i, region) in ordered.iter().enumerate() {
        let y = MARGIN_TOP + 12.0 + i as f64 * 22.0;
        let color = family_color(region.family());
        svg.push_str(&format!(
            "<rect x=\"{}\" y=\"{}\" width=\"14\" height=\"14\" fill=\"{color}\" \
             fill-opacity=\"0.5\" stroke=\"{color}\"/>\n",
            px(legend_x),
            px(y)
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"13\">{}</text>\n",
            px(legend_x + 20.0),
            px(y + 12.0),
            region.family().as_str()
        ));
    }

    svg.push_str("</svg>\n");
    svg
}
