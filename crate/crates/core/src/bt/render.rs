//! Text and Graphviz serializations of a tree.
//!
//! Text form, two-space indentation per level:
//!
//! ```text
//! ?                       Fallback
//!   →                     Sequence
//!     cond {A & !B}       ConditionGroup (`cond {}` when empty)
//!     act PutDown(x,p)    Action
//!   !                     Not
//!     cond A              single Condition leaf
//! ```

use std::fmt::Write;

use super::node::BtNode;
use crate::world::Domain;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Text,
    Dot,
}

pub fn render(root: &BtNode, domain: &Domain, format: RenderFormat) -> String {
    match format {
        RenderFormat::Text => {
            let mut out = String::new();
            text(root, domain, 0, &mut out);
            out
        }
        RenderFormat::Dot => dot(root, domain),
    }
}

fn text(node: &BtNode, d: &Domain, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match node {
        BtNode::Condition(l) => writeln!(out, "{pad}cond {}", d.lit_name(*l)),
        BtNode::ConditionGroup(c) => {
            let body = if c.is_empty() {
                String::new()
            } else {
                d.condition_string(c)
            };
            writeln!(out, "{pad}cond {{{body}}}")
        }
        BtNode::Action(a) => writeln!(out, "{pad}act {}", d.action(*a).name()),
        BtNode::Sequence(_) => writeln!(out, "{pad}→"),
        BtNode::Fallback(_) => writeln!(out, "{pad}?"),
        BtNode::Not(_) => writeln!(out, "{pad}!"),
    }
    .expect("writing to a String cannot fail");
    for child in node.children() {
        text(child, d, depth + 1, out);
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn dot(root: &BtNode, d: &Domain) -> String {
    let mut out = String::from("digraph BT {\n  node [fontname=\"Helvetica\"];\n");
    let mut next = 0usize;
    dot_node(root, d, &mut next, &mut out);
    out.push_str("}\n");
    out
}

fn dot_node(node: &BtNode, d: &Domain, next: &mut usize, out: &mut String) -> usize {
    let id = *next;
    *next += 1;
    let mut decl = |label: &str, shape: &str| {
        writeln!(out, "  n{id} [label=\"{}\", shape={shape}];", escape(label)).unwrap();
    };
    match node {
        BtNode::Condition(l) => decl(&d.lit_name(*l), "ellipse"),
        BtNode::ConditionGroup(c) if c.is_empty() => decl("true", "ellipse"),
        BtNode::ConditionGroup(c) => {
            decl("→", "box");
            for l in c.iter() {
                let child = *next;
                *next += 1;
                writeln!(
                    out,
                    "  n{child} [label=\"{}\", shape=ellipse];\n  n{id} -> n{child};",
                    escape(&d.lit_name(l))
                )
                .unwrap();
            }
        }
        BtNode::Action(a) => decl(d.action(*a).name(), "box, style=rounded"),
        BtNode::Sequence(_) => decl("→", "box"),
        BtNode::Fallback(_) => decl("?", "box"),
        BtNode::Not(_) => decl("!", "diamond"),
    }
    for child in node.children() {
        let c = dot_node(child, d, next, out);
        writeln!(out, "  n{id} -> n{c};").unwrap();
    }
    id
}
