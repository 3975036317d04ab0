//! Real-valued integrand expressions.
//!
//! An [`Expr`] is parsed from ordinary infix text such as
//! `ln(1 + 2*n*cos(a*x) + n^2)` and evaluated in IEEE double precision
//! against a set of variable bindings. The integration variable is always
//! named `x`; every other name is a free parameter that must be bound (or
//! substituted away with [`Expr::bind`]) before evaluation.
//!
//! ```
//! use frullani::expr::{parse, Bindings};
//!
//! let e = parse("exp(-a*x)").unwrap();
//! let mut env = Bindings::new();
//! env.insert("a".into(), 2.0);
//! env.insert("x".into(), 0.5);
//! assert_eq!(e.evaluate(&env).unwrap(), (-1.0f64).exp());
//! ```

mod parser;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

pub use parser::{parse, ParseFailure};

/// Name of the distinguished integration variable.
pub const INTEGRATION_VARIABLE: &str = "x";

/// Variable bindings used by [`Expr::evaluate`].
pub type Bindings = BTreeMap<String, f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Pow => "^",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinaryOp::Add | BinaryOp::Sub => 1,
            BinaryOp::Mul | BinaryOp::Div => 2,
            BinaryOp::Pow => 4,
        }
    }
}

/// The fixed set of callable functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Function {
    Exp,
    Ln,
    Sin,
    Cos,
    Atan,
    Sqrt,
    Abs,
}

impl Function {
    pub const ALL: [Function; 7] = [
        Function::Exp,
        Function::Ln,
        Function::Sin,
        Function::Cos,
        Function::Atan,
        Function::Sqrt,
        Function::Abs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Function::Exp => "exp",
            Function::Ln => "ln",
            Function::Sin => "sin",
            Function::Cos => "cos",
            Function::Atan => "atan",
            Function::Sqrt => "sqrt",
            Function::Abs => "abs",
        }
    }

    pub fn from_name(name: &str) -> Option<Function> {
        Function::ALL.into_iter().find(|f| f.name() == name)
    }

    fn apply(self, arg: f64) -> Result<f64, EvalError> {
        let domain = |func: Function| EvalError::Domain {
            function: func.name(),
            argument: arg,
        };
        match self {
            Function::Ln if arg <= 0.0 => Err(domain(self)),
            Function::Sqrt if arg < 0.0 => Err(domain(self)),
            Function::Exp => Ok(arg.exp()),
            Function::Ln => Ok(arg.ln()),
            Function::Sin => Ok(arg.sin()),
            Function::Cos => Ok(arg.cos()),
            Function::Atan => Ok(arg.atan()),
            Function::Sqrt => Ok(arg.sqrt()),
            Function::Abs => Ok(arg.abs()),
        }
    }
}

/// Parsed expression tree.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var(String),
    Neg(Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
    Call(Function, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("{function}({argument}) is outside the function's domain")]
    Domain { function: &'static str, argument: f64 },
    #[error("`{op}` produced an undefined result from {lhs} and {rhs}")]
    Undefined { op: &'static str, lhs: f64, rhs: f64 },
    #[error("expression value overflowed to {0}")]
    Overflow(f64),
}

impl Expr {
    /// Evaluates the expression against `bindings`.
    ///
    /// Intermediate infinities follow IEEE rules (so `exp(-exp(x))` decays
    /// to zero for large `x`), but NaN is never produced silently and the
    /// final value must be finite.
    pub fn evaluate(&self, bindings: &Bindings) -> Result<f64, EvalError> {
        self.evaluate_with(&|name| bindings.get(name).copied())
    }

    /// Evaluates with the integration variable set to `x` and no other
    /// bindings.
    pub fn evaluate_at(&self, x: f64) -> Result<f64, EvalError> {
        self.evaluate_with(&|name| (name == INTEGRATION_VARIABLE).then_some(x))
    }

    /// Evaluates using an arbitrary name lookup.
    pub fn evaluate_with(&self, lookup: &dyn Fn(&str) -> Option<f64>) -> Result<f64, EvalError> {
        let value = self.eval_node(lookup)?;
        if value.is_finite() {
            Ok(value)
        } else {
            Err(EvalError::Overflow(value))
        }
    }

    fn eval_node(&self, lookup: &dyn Fn(&str) -> Option<f64>) -> Result<f64, EvalError> {
        match self {
            Expr::Const(c) => Ok(*c),
            Expr::Var(name) => lookup(name).ok_or_else(|| EvalError::Unbound(name.clone())),
            Expr::Neg(inner) => Ok(-inner.eval_node(lookup)?),
            Expr::Call(func, arg) => func.apply(arg.eval_node(lookup)?),
            Expr::Binary(op, lhs, rhs) => {
                let l = lhs.eval_node(lookup)?;
                let r = rhs.eval_node(lookup)?;
                let v = match op {
                    BinaryOp::Add => l + r,
                    BinaryOp::Sub => l - r,
                    BinaryOp::Mul => l * r,
                    BinaryOp::Div => l / r,
                    BinaryOp::Pow => l.powf(r),
                };
                if v.is_nan() {
                    Err(EvalError::Undefined {
                        op: op.symbol(),
                        lhs: l,
                        rhs: r,
                    })
                } else {
                    Ok(v)
                }
            }
        }
    }

    /// A constant in the canonical form the parser produces: negative
    /// values become a negation of a non-negative literal.
    pub fn constant(value: f64) -> Expr {
        if value.is_sign_negative() {
            Expr::Neg(Box::new(Expr::Const(-value)))
        } else {
            Expr::Const(value)
        }
    }

    /// The set of names that occur as variables.
    pub fn free_variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Const(_) => {}
            Expr::Var(name) => {
                out.insert(name.clone());
            }
            Expr::Neg(inner) | Expr::Call(_, inner) => inner.collect_variables(out),
            Expr::Binary(_, lhs, rhs) => {
                lhs.collect_variables(out);
                rhs.collect_variables(out);
            }
        }
    }

    /// Replaces every bound variable by a constant. Names missing from
    /// `bindings` are left untouched.
    pub fn bind(&self, bindings: &Bindings) -> Expr {
        match self {
            Expr::Const(c) => Expr::Const(*c),
            Expr::Var(name) => match bindings.get(name) {
                Some(v) => Expr::constant(*v),
                None => Expr::Var(name.clone()),
            },
            Expr::Neg(inner) => Expr::Neg(Box::new(inner.bind(bindings))),
            Expr::Call(f, inner) => Expr::Call(*f, Box::new(inner.bind(bindings))),
            Expr::Binary(op, l, r) => Expr::Binary(*op, Box::new(l.bind(bindings)), Box::new(r.bind(bindings))),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary(op, _, _) => op.precedence(),
            Expr::Neg(_) => 3,
            Expr::Const(c) if c.is_sign_negative() => 3,
            Expr::Const(_) | Expr::Var(_) | Expr::Call(_, _) => 5,
        }
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Expr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

/// Unparses to text that [`parse`] maps back onto the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            // `{:?}` is the shortest representation that round-trips.
            Expr::Const(c) if c.is_sign_negative() => write!(f, "-{:?}", -c),
            Expr::Const(c) => write!(f, "{c:?}"),
            Expr::Var(name) => f.write_str(name),
            Expr::Neg(inner) => {
                f.write_str("-")?;
                write_child(f, inner, inner.precedence() < 3)
            }
            Expr::Call(func, arg) => write!(f, "{}({arg})", func.name()),
            Expr::Binary(op, lhs, rhs) => {
                let p = op.precedence();
                let (left_parens, right_parens) = if *op == BinaryOp::Pow {
                    // right-associative; the exponent is parsed as a unary
                    (lhs.precedence() <= p, rhs.precedence() < 3)
                } else {
                    (lhs.precedence() < p, rhs.precedence() <= p)
                };
                write_child(f, lhs, left_parens)?;
                write!(f, " {} ", op.symbol())?;
                write_child(f, rhs, right_parens)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(pairs: &[(&str, f64)]) -> Bindings {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn evaluates_identity_case() {
        let e = parse("exp(-x)").unwrap();
        assert_eq!(e.evaluate(&env(&[("x", 0.0)])).unwrap(), 1.0);
    }

    #[test]
    fn evaluates_log_cos_integrand() {
        let e = parse("ln(1 + 2*n*cos(a*x) + n^2)").unwrap();
        let v = e.evaluate(&env(&[("n", 0.5), ("a", 1.0), ("x", 0.0)])).unwrap();
        assert!((v - 2.25f64.ln()).abs() < 1e-15);
        assert!((v - 0.8109302).abs() < 1e-7);
    }

    #[test]
    fn log_of_negative_is_domain_error() {
        let e = parse("ln(x)").unwrap();
        match e.evaluate(&env(&[("x", -1.0)])) {
            Err(EvalError::Domain { function, argument }) => {
                assert_eq!(function, "ln");
                assert_eq!(argument, -1.0);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse("sqrt(x)").unwrap().evaluate_at(-4.0),
            Err(EvalError::Domain { function: "sqrt", .. })
        ));
    }

    #[test]
    fn unbound_variable_is_named() {
        let e = parse("a*x").unwrap();
        assert_eq!(e.evaluate(&env(&[("x", 1.0)])), Err(EvalError::Unbound("a".into())));
    }

    #[test]
    fn nan_is_never_silent() {
        assert!(matches!(
            parse("x^0.5").unwrap().evaluate_at(-2.0),
            Err(EvalError::Undefined { op: "^", .. })
        ));
        assert!(matches!(
            parse("x/x").unwrap().evaluate_at(0.0),
            Err(EvalError::Undefined { op: "/", .. })
        ));
        assert!(matches!(
            parse("1/x").unwrap().evaluate_at(0.0),
            Err(EvalError::Overflow(_))
        ));
    }

    #[test]
    fn intermediate_overflow_may_decay() {
        let e = parse("exp(-exp(x))").unwrap();
        assert_eq!(e.evaluate_at(1000.0).unwrap(), 0.0);
    }

    #[test]
    fn precedence_table() {
        assert_eq!(parse("2+3*4^2").unwrap().evaluate_at(0.0).unwrap(), 50.0);
        assert_eq!(parse("-2^2").unwrap().evaluate_at(0.0).unwrap(), -4.0);
        assert_eq!(parse("2^3^2").unwrap().evaluate_at(0.0).unwrap(), 512.0);
        assert_eq!(parse("2^-1").unwrap().evaluate_at(0.0).unwrap(), 0.5);
        assert_eq!(parse("8/4/2").unwrap().evaluate_at(0.0).unwrap(), 1.0);
        assert_eq!(parse("8-4-2").unwrap().evaluate_at(0.0).unwrap(), 2.0);
    }

    #[test]
    fn free_variable_sets() {
        let names = |s: &str| -> Vec<String> { parse(s).unwrap().free_variables().into_iter().collect() };
        assert_eq!(names("exp(-x)"), ["x"]);
        assert_eq!(names("atan(p*x)"), ["p", "x"]);
        assert!(names("3.5").is_empty());
        assert_eq!(names("1 + 2*n*cos(a*x) + n^2"), ["a", "n", "x"]);
    }

    #[test]
    fn bind_substitutes_constants() {
        let e = parse("exp(-c*x)").unwrap().bind(&env(&[("c", 2.0)]));
        assert_eq!(e.free_variables().into_iter().collect::<Vec<_>>(), ["x"]);
        assert_eq!(e.evaluate_at(1.0).unwrap(), (-2.0f64).exp());
        // negative constants must still unparse into something parseable
        let neg = parse("a*x^b").unwrap().bind(&env(&[("a", -0.5), ("b", -2.0)]));
        assert_eq!(parse(&neg.to_string()).unwrap(), neg);
        assert_eq!(neg.evaluate_at(2.0).unwrap(), -0.125);
    }

    #[test]
    fn unparse_is_minimal_but_faithful() {
        for src in [
            "(a + b) * c",
            "a - (b - c)",
            "(a ^ b) ^ c",
            "-(x ^ 2)",
            "(-x) ^ 2",
            "a / (b * c)",
        ] {
            let e = parse(src).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{src} -> {e}");
        }
        assert_eq!(parse("(a+b)*c").unwrap().to_string(), "(a + b) * c");
        assert_eq!(parse("-(x^2)").unwrap().to_string(), "-x ^ 2.0");
    }
}
