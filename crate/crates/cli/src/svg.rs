//! Discrete heatmap rendering of sweep grids: one rect per cell, color keyed
//! to the cell's sharing depth, with an integer legend. SVG 1.1 text output
//! so golden-file diffs stay readable.

use anyhow::{bail, Result};
use starshare_core::experiments::SweepRecord;

const CELL: f64 = 6.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_TOP: f64 = 30.0;
const LEGEND_W: f64 = 110.0;

const PALETTE: [&str; 8] = [
    "#f2f0f7", "#fee391", "#fec44f", "#fe9929", "#ec7014", "#cc4c02", "#8c2d04", "#4d004b",
];

fn color_for(rounds: u32) -> &'static str {
    PALETTE[(rounds as usize).min(PALETTE.len() - 1)]
}

/// Infers the rectangular grid shape from row-major records (axis1 outer).
fn grid_shape(records: &[SweepRecord]) -> Result<(usize, usize)> {
    if records.is_empty() {
        bail!("cannot render an empty grid");
    }
    let first = records[0].axis1_value;
    let n2 = records
        .iter()
        .take_while(|r| r.axis1_value == first)
        .count();
    let n1 = records.len() / n2;
    if n1 * n2 != records.len() {
        bail!("non-rectangular grid: {} records, {} columns", records.len(), n2);
    }
    for (i, r) in records.iter().enumerate() {
        let (row, col) = (i / n2, i % n2);
        if r.axis1_value != records[row * n2].axis1_value
            || r.axis2_value != records[col].axis2_value
        {
            bail!("non-rectangular grid: irregular coordinates at record {i}");
        }
    }
    Ok((n1, n2))
}

/// Renders the grid to an SVG 1.1 document string.
pub fn render_heatmap(
    records: &[SweepRecord],
    axis1_name: &str,
    axis2_name: &str,
) -> Result<String> {
    let (n1, n2) = grid_shape(records)?;
    let mut levels: Vec<u32> = records.iter().map(|r| r.max_rounds).collect();
    levels.sort_unstable();
    levels.dedup();

    let plot_w = n2 as f64 * CELL;
    let plot_h = n1 as f64 * CELL;
    let width = MARGIN_LEFT + plot_w + LEGEND_W;
    let height = MARGIN_TOP + plot_h + 40.0;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
    ));
    svg.push_str(&format!(
        "  <text x=\"{x}\" y=\"{y}\" font-size=\"12\" text-anchor=\"middle\">{axis2_name}</text>\n",
        x = MARGIN_LEFT + plot_w / 2.0,
        y = MARGIN_TOP + plot_h + 28.0,
    ));
    svg.push_str(&format!(
        "  <text x=\"14\" y=\"{y}\" font-size=\"12\" text-anchor=\"middle\" \
         transform=\"rotate(-90 14 {y})\">{axis1_name}</text>\n",
        y = MARGIN_TOP + plot_h / 2.0,
    ));
    // axis extent labels
    svg.push_str(&format!(
        "  <text x=\"{x}\" y=\"{y}\" font-size=\"9\">{v:.4}</text>\n",
        x = MARGIN_LEFT,
        y = MARGIN_TOP + plot_h + 12.0,
        v = records[0].axis2_value,
    ));
    svg.push_str(&format!(
        "  <text x=\"{x}\" y=\"{y}\" font-size=\"9\" text-anchor=\"end\">{v:.4}</text>\n",
        x = MARGIN_LEFT + plot_w,
        y = MARGIN_TOP + plot_h + 12.0,
        v = records[records.len() - 1].axis2_value,
    ));
    svg.push_str(&format!(
        "  <text x=\"{x}\" y=\"{y}\" font-size=\"9\" text-anchor=\"end\">{v:.4}</text>\n",
        x = MARGIN_LEFT - 4.0,
        y = MARGIN_TOP + 8.0,
        v = records[0].axis1_value,
    ));
    svg.push_str(&format!(
        "  <text x=\"{x}\" y=\"{y}\" font-size=\"9\" text-anchor=\"end\">{v:.4}</text>\n",
        x = MARGIN_LEFT - 4.0,
        y = MARGIN_TOP + plot_h,
        v = records[records.len() - 1].axis1_value,
    ));

    for (i, r) in records.iter().enumerate() {
        let (row, col) = (i / n2, i % n2);
        svg.push_str(&format!(
            "  <rect class=\"cell\" x=\"{x}\" y=\"{y}\" width=\"{CELL}\" height=\"{CELL}\" \
             fill=\"{fill}\"/>\n",
            x = MARGIN_LEFT + col as f64 * CELL,
            y = MARGIN_TOP + row as f64 * CELL,
            fill = color_for(r.max_rounds),
        ));
    }

    let legend_x = MARGIN_LEFT + plot_w + 16.0;
    svg.push_str(&format!(
        "  <text x=\"{legend_x}\" y=\"{y}\" font-size=\"11\">rounds</text>\n",
        y = MARGIN_TOP - 8.0,
    ));
    for (i, level) in levels.iter().enumerate() {
        let y = MARGIN_TOP + i as f64 * 18.0;
        svg.push_str(&format!(
            "  <rect class=\"legend\" x=\"{legend_x}\" y=\"{y}\" width=\"12\" height=\"12\" \
             fill=\"{fill}\"/>\n",
            fill = color_for(*level),
        ));
        svg.push_str(&format!(
            "  <text x=\"{x}\" y=\"{ty}\" font-size=\"11\">{level}</text>\n",
            x = legend_x + 18.0,
            ty = y + 10.0,
        ));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
