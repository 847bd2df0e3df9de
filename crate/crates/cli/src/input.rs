//! Text formats read by the command-line driver.

use std::path::Path;

use border_basis::{
    parse_monomial_list, parse_polynomial, Error, Field, Graph, Monomial, Polynomial, Preference,
};

/// Failure to read or understand an input file.
#[derive(Debug)]
pub struct InputError {
    pub message: String,
}

impl InputError {
    pub fn new(message: impl Into<String>) -> Self {
        InputError {
            message: message.into(),
        }
    }

    fn at(path: &Path, line: usize, err: impl std::fmt::Display) -> Self {
        InputError::new(format!("{}:{line}: {err}", path.display()))
    }
}

pub fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path)
        .map_err(|e| InputError::new(format!("cannot read {}: {e}", path.display())))
}

/// Meaningful lines with their 1-based line numbers; `#` starts a comment.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

#[derive(Clone, Debug)]
pub struct System {
    pub arity: usize,
    pub field: Field,
    pub polynomials: Vec<Polynomial>,
}

fn parse_header(line: &str) -> Result<(usize, Field), String> {
    let mut words = line.split_whitespace();
    if words.next() != Some("ring") {
        return Err("expected header `ring n=<int> field=Q|GF(p)`".into());
    }
    let mut arity = None;
    let mut field = None;
    for w in words {
        match w.split_once('=') {
            Some(("n", v)) => {
                let n: usize = v.parse().map_err(|_| format!("bad arity `{v}`"))?;
                if n == 0 {
                    return Err("the ring needs at least one variable".into());
                }
                arity = Some(n);
            }
            Some(("field", v)) => field = Some(v.parse::<Field>().map_err(|e| e.to_string())?),
            _ => return Err(format!("unknown header entry `{w}`")),
        }
    }
    Ok((
        arity.ok_or("header lacks n=<int>")?,
        field.unwrap_or(Field::Rational),
    ))
}

/// A `ring` header followed by polynomials, one per line or separated by
/// commas. `field` overrides the header's field.
pub fn parse_system(path: &Path, text: &str, field: Option<Field>) -> Result<System, InputError> {
    let mut lines = content_lines(text);
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| InputError::new(format!("{}: empty system file", path.display())))?;
    let (arity, declared) = parse_header(header).map_err(|e| InputError::at(path, line_no, e))?;
    let field = field.unwrap_or(declared);
    let mut polynomials = Vec::new();
    for (line_no, line) in lines {
        for item in line.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let p = parse_polynomial(item, arity, field)
                .map_err(|e| InputError::at(path, line_no, e))?;
            if p.is_zero() {
                return Err(InputError::at(path, line_no, Error::ZeroPolynomial));
            }
            polynomials.push(p);
        }
    }
    if polynomials.is_empty() {
        return Err(InputError::new(format!(
            "{}: the system has no polynomials",
            path.display()
        )));
    }
    Ok(System {
        arity,
        field,
        polynomials,
    })
}

/// A claimed border basis: an `order_ideal <monomials>` line, then the
/// generators.
#[derive(Clone, Debug)]
pub struct BasisFile {
    pub order_ideal: Vec<Monomial>,
    pub generators: Vec<Polynomial>,
}

pub fn parse_basis(path: &Path, text: &str, sys: &System) -> Result<BasisFile, InputError> {
    let mut order_ideal = None;
    let mut generators = Vec::new();
    for (line_no, line) in content_lines(text) {
        if let Some(rest) = line.strip_prefix("order_ideal") {
            if order_ideal.is_some() {
                return Err(InputError::at(path, line_no, "repeated order_ideal line"));
            }
            let list = parse_monomial_list(rest, sys.arity)
                .map_err(|e| InputError::at(path, line_no, e))?;
            order_ideal = Some(list);
            continue;
        }
        for item in line.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            generators.push(
                parse_polynomial(item, sys.arity, sys.field)
                    .map_err(|e| InputError::at(path, line_no, e))?,
            );
        }
    }
    let order_ideal = order_ideal
        .ok_or_else(|| InputError::new(format!("{}: missing order_ideal line", path.display())))?;
    Ok(BasisFile {
        order_ideal,
        generators,
    })
}

pub fn parse_preference(path: &Path, text: &str, arity: usize) -> Result<Preference, InputError> {
    Preference::parse(text, arity).map_err(|e| InputError::new(format!("{}: {e}", path.display())))
}

pub fn parse_graph(path: &Path, text: &str) -> Result<Graph, InputError> {
    Graph::parse(text).map_err(|e| InputError::new(format!("{}: {e}", path.display())))
}

pub fn parse_order_ideal(csv: &str, arity: usize) -> Result<Vec<Monomial>, InputError> {
    parse_monomial_list(csv, arity).map_err(|e| InputError::new(format!("--order-ideal: {e}")))
}
