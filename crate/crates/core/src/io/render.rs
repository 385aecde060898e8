//! DOT and SVG drawings of a tree, edges colored by depth class.
//!
//! An edge's depth class is the depth of its lower endpoint, so all edges
//! the same number of hops from a center share a color. The edge joining
//! two centers is class 0 and drawn black. Classes 1.. cycle through
//! [`DEPTH_PALETTE`].

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{usage, Error, Result};
use crate::instance::Instance;
use crate::tree::RootedTree;

/// Colors for depth classes 1 through 8, repeating after that.
pub const DEPTH_PALETTE: [(&str, &str); 8] = [
    ("red", "#e41a1c"),
    ("blue", "#377eb8"),
    ("green", "#4daf4a"),
    ("purple", "#984ea3"),
    ("orange", "#ff7f00"),
    ("brown", "#a65628"),
    ("pink", "#f781bf"),
    ("gray", "#999999"),
];

pub const CENTER_EDGE_COLOR: (&str, &str) = ("black", "#000000");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Dot,
    Svg,
}

impl FromStr for RenderFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dot" | "gv" => Ok(RenderFormat::Dot),
            "svg" => Ok(RenderFormat::Svg),
            _ => Err(usage(format!("unknown render format '{s}'"))),
        }
    }
}

/// Depth class of every tree edge, as `(child, parent, class)`.
pub fn edge_classes(tree: &RootedTree) -> Vec<(usize, usize, u32)> {
    tree.edges()
        .into_iter()
        .map(|(c, p)| {
            let class = if tree.is_center(c) && tree.is_center(p) { 0 } else { tree.depth(c).max(0) as u32 };
            (c, p, class)
        })
        .collect()
}

pub fn class_color(class: u32) -> (&'static str, &'static str) {
    if class == 0 {
        CENTER_EDGE_COLOR
    } else {
        DEPTH_PALETTE[(class as usize - 1) % DEPTH_PALETTE.len()]
    }
}

pub fn render_tree(tree: &RootedTree, inst: &Instance, format: RenderFormat) -> Result<String> {
    if !tree.is_spanning() || tree.n() != inst.len() {
        return Err(usage("rendering needs a tree spanning the instance"));
    }
    Ok(match format {
        RenderFormat::Dot => render_dot(tree, inst),
        RenderFormat::Svg => render_svg(tree, inst),
    })
}

fn render_dot(tree: &RootedTree, inst: &Instance) -> String {
    let mut s = String::from("graph tree {\n  node [shape=point, width=0.05];\n");
    for (v, p) in inst.points().iter().enumerate() {
        let extra = if tree.is_center(v) { ", shape=doublecircle, width=0.15, color=black" } else { "" };
        writeln!(s, "  {v} [pos=\"{:.6},{:.6}!\"{extra}];", p.x, p.y).unwrap();
    }
    for (c, p, class) in edge_classes(tree) {
        writeln!(s, "  {p} -- {c} [color={}, depth={class}];", class_color(class).0).unwrap();
    }
    s.push_str("}\n");
    s
}

fn render_svg(tree: &RootedTree, inst: &Instance) -> String {
    let mut s = String::from(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1 1\" width=\"640\" height=\"640\">\n\
         <rect x=\"0\" y=\"0\" width=\"1\" height=\"1\" fill=\"white\" stroke=\"#cccccc\" stroke-width=\"0.002\"/>\n",
    );
    // y grows downward in SVG
    let at = |v: usize| {
        let p = inst.point(v);
        (p.x, 1.0 - p.y)
    };
    for (c, p, class) in edge_classes(tree) {
        let (x1, y1) = at(p);
        let (x2, y2) = at(c);
        writeln!(
            s,
            "<line x1=\"{x1:.6}\" y1=\"{y1:.6}\" x2=\"{x2:.6}\" y2=\"{y2:.6}\" stroke=\"{}\" stroke-width=\"0.003\" data-depth=\"{class}\"/>",
            class_color(class).1
        )
        .unwrap();
    }
    for v in 0..inst.len() {
        let (x, y) = at(v);
        if tree.is_center(v) {
            writeln!(
                s,
                "<rect x=\"{:.6}\" y=\"{:.6}\" width=\"0.016\" height=\"0.016\" fill=\"black\" class=\"center\"/>",
                x - 0.008,
                y - 0.008
            )
            .unwrap();
        } else {
            writeln!(s, "<circle cx=\"{x:.6}\" cy=\"{y:.6}\" r=\"0.004\" fill=\"#333333\"/>").unwrap();
        }
    }
    s.push_str("</svg>\n");
    s
}
