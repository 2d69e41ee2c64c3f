//! Vector-valued expressions in the variables `x1..xi`, with symbolic
//! partial derivatives supplied by `exmex`.

use std::fmt;

use exmex::prelude::*;

use crate::error::{Error, Result};

type Ex = FlatEx<f64>;

/// One compiled expression with its variables resolved to argument slots.
#[derive(Clone)]
struct Component {
    ex: Ex,
    slots: Vec<usize>,
}

impl Component {
    fn new(ex: Ex, arity: usize, source: &str) -> Result<Self> {
        let slots = ex
            .var_names()
            .iter()
            .map(|name| slot_of(name, arity).ok_or_else(|| unknown_variable(name, arity, source)))
            .collect::<Result<_>>()?;
        Ok(Component { ex, slots })
    }

    fn eval(&self, x: &[f64]) -> Result<f64> {
        let args: Vec<f64> = self.slots.iter().map(|&s| x[s]).collect();
        let value = self
            .ex
            .eval(&args)
            .map_err(|e| Error::Numeric(format!("evaluating `{}` at {x:?}: {e}", self.ex.unparse())))?;
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::Numeric(format!(
                "`{}` is not finite at {x:?}",
                self.ex.unparse()
            )))
        }
    }

    /// `∂/∂x_slot`, or `None` when the variable does not occur.
    fn partial(&self, slot: usize, arity: usize) -> Result<Option<Component>> {
        let Some(idx) = self.slots.iter().position(|&s| s == slot) else {
            return Ok(None);
        };
        let source = self.ex.unparse().to_string();
        let ex = self
            .ex
            .clone()
            .partial(idx)
            .map_err(|e| Error::input(format!("cannot differentiate `{source}`: {e}")))?;
        Component::new(ex, arity, &source).map(Some)
    }
}

fn slot_of(name: &str, arity: usize) -> Option<usize> {
    if arity == 1 && name == "x" {
        return Some(0);
    }
    let k: usize = name.strip_prefix('x')?.parse().ok()?;
    (1..=arity).contains(&k).then(|| k - 1)
}

fn unknown_variable(name: &str, arity: usize, source: &str) -> Error {
    Error::input(format!(
        "unknown variable `{name}` in `{source}`; expected x1..x{arity}"
    ))
}

/// `k: ℝⁱ → ℝʲ` given componentwise by expressions.
#[derive(Clone)]
pub struct ExprFunction {
    arity: usize,
    sources: Vec<String>,
    components: Vec<Component>,
    // first[i][j] = ∂k_i/∂x_j
    first: Vec<Vec<Option<Component>>>,
    // second[i][j][l] = ∂²k_i/∂x_j∂x_l
    second: Vec<Vec<Vec<Option<Component>>>>,
}

impl fmt::Debug for ExprFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExprFunction")
            .field("arity", &self.arity)
            .field("components", &self.sources)
            .finish()
    }
}

impl PartialEq for ExprFunction {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity && self.sources == other.sources
    }
}

impl ExprFunction {
    pub fn parse<S: AsRef<str>>(arity: usize, sources: &[S]) -> Result<Self> {
        if arity == 0 {
            return Err(Error::input("expressions need at least one variable"));
        }
        if sources.is_empty() {
            return Err(Error::input("no component expressions"));
        }
        let mut components = Vec::with_capacity(sources.len());
        for s in sources {
            let s = s.as_ref();
            let ex = exmex::parse::<f64>(s)
                .map_err(|e| Error::input(format!("cannot parse `{s}`: {e}")))?;
            components.push(Component::new(ex, arity, s)?);
        }
        let mut first = Vec::with_capacity(components.len());
        let mut second = Vec::with_capacity(components.len());
        for c in &components {
            let row: Vec<Option<Component>> = (0..arity)
                .map(|j| c.partial(j, arity))
                .collect::<Result<_>>()?;
            let mut hess = Vec::with_capacity(arity);
            for d in &row {
                let hrow: Vec<Option<Component>> = match d {
                    Some(d) => (0..arity).map(|l| d.partial(l, arity)).collect::<Result<_>>()?,
                    None => vec![None; arity],
                };
                hess.push(hrow);
            }
            first.push(row);
            second.push(hess);
        }
        Ok(ExprFunction {
            arity,
            sources: sources.iter().map(|s| s.as_ref().to_string()).collect(),
            components,
            first,
            second,
        })
    }

    /// Componentwise identity `x_i ↦ x_i`.
    pub fn identity(arity: usize) -> Self {
        let sources: Vec<String> = (1..=arity).map(|i| format!("x{i}")).collect();
        ExprFunction::parse(arity, &sources).expect("identity expressions parse")
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn output_dim(&self) -> usize {
        self.components.len()
    }

    pub fn sources(&self) -> &[String] {
        &self.sources
    }

    fn check_point(&self, x: &[f64]) -> Result<()> {
        if x.len() == self.arity {
            Ok(())
        } else {
            Err(Error::input(format!(
                "point has {} coordinates, expressions take {}",
                x.len(),
                self.arity
            )))
        }
    }

    pub fn eval(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_point(x)?;
        self.components.iter().map(|c| c.eval(x)).collect()
    }

    /// `Dk_x(v)` from the symbolic partials.
    pub fn jacobian_apply(&self, x: &[f64], v: &[f64]) -> Result<Vec<f64>> {
        self.check_point(x)?;
        self.check_point(v)?;
        self.first
            .iter()
            .map(|row| {
                let mut sum = 0.0;
                for (j, d) in row.iter().enumerate() {
                    if let Some(d) = d {
                        sum += d.eval(x)? * v[j];
                    }
                }
                Ok(sum)
            })
            .collect()
    }

    /// `D²k_x(v, w)` from the symbolic second partials.
    pub fn second_directional(&self, x: &[f64], v: &[f64], w: &[f64]) -> Result<Vec<f64>> {
        self.check_point(x)?;
        self.check_point(v)?;
        self.check_point(w)?;
        self.second
            .iter()
            .map(|hess| {
                let mut sum = 0.0;
                for (j, row) in hess.iter().enumerate() {
                    for (l, d) in row.iter().enumerate() {
                        if let Some(d) = d {
                            sum += d.eval(x)? * v[j] * w[l];
                        }
                    }
                }
                Ok(sum)
            })
            .collect()
    }
}
