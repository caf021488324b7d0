//! Domain file reader and action-schema grounding.
//!
//! ```text
//! # comment
//! [objects]
//! Coffee, Tea : food          # one or more names, then the category
//! Table : place
//!
//! [predicates]
//! On(food, place)
//! Dirty(place)
//!
//! [actions]
//! PutDown(x: food, p: place)  # parameters are `name: category`
//!   pre: Holding(x) & RobotNear(p)
//!   add: On(x, p)
//!   del: Holding(x)
//!   cost: 2.5
//!   cost(Coffee, Table): 3    # per-grounding override, parameter objects in order
//! Make(Coffee)                # a bare object name in the head is a constant
//!   add: Exists(Coffee)
//!   cost: 5
//!
//! [init]                      # optional default initial state
//! RobotNear(Bar) & Dirty(Table)
//! ```
//!
//! `pre`, `add` and `del` are `&`-conjunctions in the goal grammar over
//! parameters and object constants; only `pre` may negate with `!`. In `del`
//! and in negated `pre` literals an argument may be `*`, which stands for every
//! object of the predicate's category at that position. Atoms also in `add`
//! (for `del`) or required true by `pre` are left out, so `del: RobotNear(*)`
//! clears the robot's location wherever it was and
//! `pre: RobotNear(p) & !RobotNear(*)` says it is near `p` and nowhere else. Keys may
//! be omitted (empty set) except `cost`. Action lines are indented under their
//! header. Groundings whose add and delete lists overlap, or whose precondition
//! contains both `l` and `!l`, are dropped and counted in
//! [`Domain::dropped_groundings`].

use std::collections::HashMap;
use std::path::Path;

use thiserror::Error;

use super::action::GroundAction;
use super::domain::{cartesian, AtomTable, Domain, DomainError};
use super::literal::{ConditionSet, Lit, WorldState};
use crate::cost::Cost;
use crate::logic::{parse_wff, Atom, Signature, SignedLiteral, Vocabulary, Wff};

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("grounding error in `{schema}`: {message}")]
    Grounding { schema: String, message: String },
    #[error(transparent)]
    Domain(#[from] DomainError),
}

fn parse_err(line: usize, message: impl Into<String>) -> LoadError {
    LoadError::Parse {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Objects,
    Predicates,
    Actions,
    Init,
}

#[derive(Debug, Clone)]
enum HeadArg {
    Param(usize),
    Const(String),
}

#[derive(Debug, Clone, Default)]
struct Schema {
    line: usize,
    name: String,
    params: Vec<(String, String)>,
    head: Vec<HeadArg>,
    pre: Option<Vec<SignedLiteral>>,
    add: Option<Vec<SignedLiteral>>,
    del: Option<Vec<SignedLiteral>>,
    cost: Option<Cost>,
    overrides: Vec<(usize, Vec<String>, Cost)>,
}

impl Schema {
    fn display_head(&self) -> String {
        let args: Vec<String> = self
            .head
            .iter()
            .map(|h| match h {
                HeadArg::Param(i) => format!("{}: {}", self.params[*i].0, self.params[*i].1),
                HeadArg::Const(c) => c.clone(),
            })
            .collect();
        format!("{}({})", self.name, args.join(", "))
    }
}

/// Reads and grounds a domain file.
pub fn load_domain(path: impl AsRef<Path>) -> Result<Domain, LoadError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_domain(&text)
}

/// Parses and grounds domain file text.
pub fn parse_domain(text: &str) -> Result<Domain, LoadError> {
    let mut section = Section::None;
    let mut objects: Vec<(String, String)> = Vec::new();
    let mut predicates: Vec<(usize, Signature)> = Vec::new();
    let mut schemas: Vec<Schema> = Vec::new();
    let mut init: Vec<(usize, SignedLiteral)> = Vec::new();
    let mut has_init = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let indented = line.starts_with(' ') || line.starts_with('\t');
        let line = line.trim();
        if line.starts_with('[') {
            section = match line {
                "[objects]" => Section::Objects,
                "[predicates]" => Section::Predicates,
                "[actions]" => Section::Actions,
                "[init]" => {
                    has_init = true;
                    Section::Init
                }
                other => return Err(parse_err(line_no, format!("unknown section `{other}`"))),
            };
            continue;
        }
        match section {
            Section::None => return Err(parse_err(line_no, "content before the first section")),
            Section::Objects => {
                let (names, category) = line
                    .split_once(':')
                    .ok_or_else(|| parse_err(line_no, "expected `Name : category`"))?;
                let category = ident(category.trim(), line_no)?;
                for name in names.split(',') {
                    objects.push((ident(name.trim(), line_no)?, category.clone()));
                }
            }
            Section::Predicates => {
                let (name, args) = split_head(line, line_no)?;
                let params = args
                    .iter()
                    .map(|a| ident(a, line_no))
                    .collect::<Result<Vec<_>, _>>()?;
                predicates.push((line_no, Signature::new(name, params)));
            }
            Section::Actions if !indented => schemas.push(parse_schema_head(line, line_no)?),
            Section::Actions => {
                let schema = schemas
                    .last_mut()
                    .ok_or_else(|| parse_err(line_no, "indented line outside an action block"))?;
                parse_schema_line(schema, line, line_no)?;
            }
            Section::Init => {
                for lit in conjunction(line, line_no)? {
                    init.push((line_no, lit));
                }
            }
        }
    }

    let mut action_sigs: Vec<Signature> = Vec::new();
    let categories: HashMap<&str, &str> = objects
        .iter()
        .map(|(o, c)| (o.as_str(), c.as_str()))
        .collect();
    for schema in &schemas {
        if schema.cost.is_none() {
            return Err(parse_err(
                schema.line,
                format!("`{}` has no cost", schema.name),
            ));
        }
        let mut params = Vec::new();
        for h in &schema.head {
            match h {
                HeadArg::Param(i) => params.push(schema.params[*i].1.clone()),
                HeadArg::Const(c) => match categories.get(c.as_str()) {
                    Some(cat) => params.push(cat.to_string()),
                    None => {
                        return Err(LoadError::Grounding {
                            schema: schema.display_head(),
                            message: format!("unknown object `{c}`"),
                        })
                    }
                },
            }
        }
        match action_sigs.iter().find(|s| s.name == schema.name) {
            Some(existing) if existing.params != params => {
                return Err(parse_err(
                    schema.line,
                    format!(
                        "`{}` redeclared with different parameter categories",
                        schema.name
                    ),
                ))
            }
            Some(_) => {}
            None => action_sigs.push(Signature::new(schema.name.clone(), params)),
        }
    }
    for sig in &action_sigs {
        for cat in &sig.params {
            if !objects.iter().any(|(_, c)| c == cat) {
                let schema = schemas.iter().find(|s| s.name == sig.name).unwrap();
                return Err(LoadError::Grounding {
                    schema: schema.display_head(),
                    message: format!("unknown category `{cat}`"),
                });
            }
        }
    }

    let vocab = Vocabulary::new(
        objects,
        predicates.iter().map(|(_, s)| s.clone()),
        action_sigs,
    )
    .map_err(|e| {
        let line = predicates.first().map(|(l, _)| *l).unwrap_or(0);
        parse_err(line, e.to_string())
    })?;
    let atoms = AtomTable::ground(&vocab);

    let mut actions = Vec::new();
    let mut dropped = 0;
    for schema in &schemas {
        let (mut ground, d) = ground_schema(schema, &vocab, &atoms)?;
        dropped += d;
        actions.append(&mut ground);
    }

    let mut init_atoms = Vec::new();
    for (line, lit) in &init {
        if lit.negated {
            return Err(parse_err(*line, "[init] literals must be positive"));
        }
        let id = atoms
            .get(&lit.atom)
            .ok_or_else(|| parse_err(*line, format!("`{}` is not a valid literal", lit.atom)))?;
        init_atoms.push(id);
    }

    let mut domain = Domain::new(vocab, atoms, actions)?.with_dropped_groundings(dropped);
    if has_init {
        domain = domain.with_init(WorldState::from_atoms(init_atoms));
    }
    Ok(domain)
}

fn ident(s: &str, line: usize) -> Result<String, LoadError> {
    let ok = s
        .chars()
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if ok {
        Ok(s.to_string())
    } else {
        Err(parse_err(line, format!("`{s}` is not an identifier")))
    }
}

/// Splits `Name(a, b)` into the name and trimmed argument strings.
fn split_head(line: &str, line_no: usize) -> Result<(String, Vec<String>), LoadError> {
    match line.split_once('(') {
        None => Ok((ident(line, line_no)?, Vec::new())),
        Some((name, rest)) => {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| parse_err(line_no, "expected `)` at end of line"))?;
            let args: Vec<String> = inner.split(',').map(|a| a.trim().to_string()).collect();
            if args.iter().any(String::is_empty) {
                return Err(parse_err(line_no, "empty argument"));
            }
            Ok((ident(name.trim(), line_no)?, args))
        }
    }
}

fn parse_schema_head(line: &str, line_no: usize) -> Result<Schema, LoadError> {
    let (name, args) = split_head(line, line_no)?;
    let mut schema = Schema {
        line: line_no,
        name,
        ..Schema::default()
    };
    for arg in args {
        match arg.split_once(':') {
            Some((var, cat)) => {
                let var = ident(var.trim(), line_no)?;
                if schema.params.iter().any(|(v, _)| *v == var) {
                    return Err(parse_err(line_no, format!("parameter `{var}` repeated")));
                }
                schema.params.push((var, ident(cat.trim(), line_no)?));
                schema.head.push(HeadArg::Param(schema.params.len() - 1));
            }
            None => schema.head.push(HeadArg::Const(ident(&arg, line_no)?)),
        }
    }
    Ok(schema)
}

fn parse_schema_line(schema: &mut Schema, line: &str, line_no: usize) -> Result<(), LoadError> {
    let (key, value) = line
        .split_once(':')
        .ok_or_else(|| parse_err(line_no, "expected `key: value`"))?;
    let key = key.trim();
    let value = value.trim();
    let set_once = |slot: &mut Option<Vec<SignedLiteral>>, lits| {
        if slot.is_some() {
            return Err(parse_err(line_no, format!("`{key}` given twice")));
        }
        *slot = Some(lits);
        Ok(())
    };
    match key {
        "pre" => {
            let lits = conjunction(&value.replace('*', WILDCARD), line_no)?;
            if lits.iter().any(|l| !l.negated && is_wild(l)) {
                return Err(parse_err(
                    line_no,
                    "`*` is only allowed in negated `pre` literals",
                ));
            }
            set_once(&mut schema.pre, lits)?
        }
        "add" | "del" => {
            let lits = if key == "del" {
                conjunction(&value.replace('*', WILDCARD), line_no)?
            } else {
                conjunction(value, line_no)?
            };
            if lits.iter().any(|l| l.negated) {
                return Err(parse_err(
                    line_no,
                    format!("`{key}` literals must be positive"),
                ));
            }
            let slot = if key == "add" {
                &mut schema.add
            } else {
                &mut schema.del
            };
            set_once(slot, lits)?;
        }
        "cost" => {
            if schema.cost.is_some() {
                return Err(parse_err(line_no, "`cost` given twice"));
            }
            schema.cost = Some(
                value
                    .parse()
                    .map_err(|e| parse_err(line_no, format!("{e}")))?,
            );
        }
        k if k.starts_with("cost(") => {
            let (_, args) = split_head(k, line_no)?;
            if args.len() != schema.params.len() {
                return Err(parse_err(
                    line_no,
                    format!("cost override needs {} object(s)", schema.params.len()),
                ));
            }
            let cost = value
                .parse()
                .map_err(|e| parse_err(line_no, format!("{e}")))?;
            schema.overrides.push((line_no, args, cost));
        }
        other => return Err(parse_err(line_no, format!("unknown key `{other}`"))),
    }
    Ok(())
}

/// Stand-in for `*` in delete lists; the tokenizer reads it as an identifier.
const WILDCARD: &str = "_";

fn is_wild(lit: &SignedLiteral) -> bool {
    lit.atom.args.iter().any(|a| a == WILDCARD)
}

/// Parses an `&`-conjunction of literals (possibly negated); empty text is the empty set.
fn conjunction(text: &str, line_no: usize) -> Result<Vec<SignedLiteral>, LoadError> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let wff = parse_wff(text).map_err(|e| parse_err(line_no, e.to_string()))?;
    let mut out = Vec::new();
    flatten(&wff, &mut out).map_err(|m| parse_err(line_no, m))?;
    Ok(out)
}

fn flatten(wff: &Wff, out: &mut Vec<SignedLiteral>) -> Result<(), String> {
    match wff {
        Wff::Literal(l) => out.push(l.clone()),
        Wff::Not(inner) => match inner.as_ref() {
            Wff::Literal(l) => out.push(l.negate()),
            _ => return Err("only literals may be negated here".into()),
        },
        Wff::And(a, b) => {
            flatten(a, out)?;
            flatten(b, out)?;
        }
        Wff::Or(..) => return Err("`|` is not allowed here; use a conjunction".into()),
    }
    Ok(())
}

fn ground_schema(
    schema: &Schema,
    vocab: &Vocabulary,
    atoms: &AtomTable,
) -> Result<(Vec<GroundAction>, usize), LoadError> {
    let head = schema.display_head();
    let gerr = |message: String| LoadError::Grounding {
        schema: head.clone(),
        message,
    };
    let var_index: HashMap<&str, usize> = schema
        .params
        .iter()
        .enumerate()
        .map(|(i, (v, _))| (v.as_str(), i))
        .collect();

    // Type-check every literal template once, before grounding.
    let lists = [&schema.pre, &schema.add, &schema.del];
    for (k, lit) in lists
        .iter()
        .enumerate()
        .flat_map(|(k, l)| l.iter().flatten().map(move |lit| (k, lit)))
    {
        let sig = vocab
            .condition(&lit.atom.predicate)
            .ok_or_else(|| gerr(format!("unknown predicate `{}`", lit.atom.predicate)))?;
        if sig.arity() != lit.atom.args.len() {
            return Err(gerr(format!(
                "`{}` expects {} argument(s)",
                sig.name,
                sig.arity()
            )));
        }
        for (arg, want) in lit.atom.args.iter().zip(&sig.params) {
            if k != 1 && arg == WILDCARD && !var_index.contains_key(arg.as_str()) {
                continue;
            }
            let found = match var_index.get(arg.as_str()) {
                Some(&i) => schema.params[i].1.as_str(),
                None => vocab
                    .category_of(arg)
                    .ok_or_else(|| gerr(format!("`{arg}` is neither a parameter nor an object")))?,
            };
            if found != want {
                return Err(gerr(format!(
                    "`{arg}` in `{}` is a <{found}> but <{want}> is required",
                    lit.atom
                )));
            }
        }
    }
    for (_, cat) in &schema.params {
        if vocab.objects_in(cat).next().is_none() {
            return Err(gerr(format!("unknown category `{cat}`")));
        }
    }
    let mut overrides: HashMap<Vec<String>, Cost> = HashMap::new();
    for (line, args, cost) in &schema.overrides {
        for (arg, (_, cat)) in args.iter().zip(&schema.params) {
            if vocab.category_of(arg) != Some(cat.as_str()) {
                return Err(parse_err(*line, format!("`{arg}` is not a <{cat}>")));
            }
        }
        overrides.insert(args.clone(), *cost);
    }

    let domains: Vec<Vec<&str>> = schema
        .params
        .iter()
        .map(|(_, c)| vocab.objects_in(c).collect())
        .collect();
    let mut out = Vec::new();
    let mut dropped = 0;
    for binding in cartesian(&domains) {
        let subst = |lit: &SignedLiteral| -> Lit {
            let args = lit
                .atom
                .args
                .iter()
                .map(|a| match var_index.get(a.as_str()) {
                    Some(&i) => binding[i].to_string(),
                    None => a.clone(),
                });
            let atom = Atom::new(lit.atom.predicate.clone(), args);
            let id = atoms
                .get(&atom)
                .expect("type-checked literal is in the universe");
            Lit::new(id, lit.negated)
        };
        let expand = |lit: &SignedLiteral| -> Vec<Lit> {
            if !is_wild(lit) || var_index.contains_key(WILDCARD) {
                return vec![subst(lit)];
            }
            let sig = vocab.condition(&lit.atom.predicate).expect("type-checked");
            let choices: Vec<Vec<&str>> = lit
                .atom
                .args
                .iter()
                .zip(&sig.params)
                .map(|(a, cat)| {
                    if a == WILDCARD {
                        vocab.objects_in(cat).collect()
                    } else {
                        vec![a.as_str()]
                    }
                })
                .collect();
            cartesian(&choices)
                .into_iter()
                .map(|args| {
                    subst(&SignedLiteral {
                        atom: Atom::new(
                            lit.atom.predicate.clone(),
                            args.iter().map(|s| s.to_string()),
                        ),
                        negated: lit.negated,
                    })
                })
                .collect()
        };
        let pre_lits = schema.pre.iter().flatten();
        let fixed: ConditionSet = pre_lits
            .clone()
            .filter(|l| !is_wild(l))
            .map(subst)
            .collect();
        let wild_pre: Vec<Lit> = pre_lits
            .filter(|l| is_wild(l))
            .flat_map(expand)
            .filter(|l| !fixed.contains(l.negate()))
            .collect();
        let pre = fixed.union(&ConditionSet::from_lits(wild_pre));
        let add: Vec<_> = schema
            .add
            .iter()
            .flatten()
            .map(|l| subst(l).atom())
            .collect();
        let mut del = Vec::new();
        for lit in schema.del.iter().flatten() {
            let wild = is_wild(lit);
            for id in expand(lit).into_iter().map(Lit::atom) {
                if !(wild && add.contains(&id)) {
                    del.push(id);
                }
            }
        }
        let head_args: Vec<&str> = schema
            .head
            .iter()
            .map(|h| match h {
                HeadArg::Param(i) => binding[*i],
                HeadArg::Const(c) => c.as_str(),
            })
            .collect();
        let name = if head_args.is_empty() {
            schema.name.clone()
        } else {
            format!("{}({})", schema.name, head_args.join(","))
        };
        let key: Vec<String> = binding.iter().map(|s| s.to_string()).collect();
        let cost = overrides.get(&key).copied().or(schema.cost).unwrap();
        match GroundAction::new(name, pre, add, del, cost) {
            Ok(a) => out.push(a),
            Err(_) => dropped += 1,
        }
    }
    Ok((out, dropped))
}
