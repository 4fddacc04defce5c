use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::dnf::{Clause, DnfFormula, Literal};
use crate::error::{ComplementError, Result};
use crate::model::Word;

/// Arithmetic expression over the input bits `s_1 ..= s_b`.
///
/// Text form is fully parenthesized: `(1 - e)`, `(e * e * ...)`, and
/// `(w*e + w*e + ...)` for weighted sums, with variables written `s<i>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ArithExpression {
    Constant(i64),
    Variable(u32),
    Product(Vec<ArithExpression>),
    OneMinus(Box<ArithExpression>),
    WeightedSum(Vec<(i64, ArithExpression)>),
}

impl ArithExpression {
    pub fn one_minus(e: ArithExpression) -> Self {
        Self::OneMinus(Box::new(e))
    }

    /// Evaluates with `Variable(i)` bound to bit `i` of `x` (1 = LSB).
    pub fn eval(&self, x: Word) -> i128 {
        match self {
            Self::Constant(c) => i128::from(*c),
            Self::Variable(v) => i128::from((x >> (v - 1)) & 1),
            Self::Product(children) => children.iter().map(|c| c.eval(x)).product(),
            Self::OneMinus(inner) => 1 - inner.eval(x),
            Self::WeightedSum(terms) => terms
                .iter()
                .map(|(w, e)| i128::from(*w) * e.eval(x))
                .sum(),
        }
    }
}

impl fmt::Display for ArithExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Constant(c) => write!(f, "{c}"),
            Self::Variable(v) => write!(f, "s{v}"),
            Self::Product(children) => {
                f.write_str("(")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" * ")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
            Self::OneMinus(inner) => write!(f, "(1 - {inner})"),
            Self::WeightedSum(terms) => {
                f.write_str("(")?;
                for (i, (w, e)) in terms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{w}*{e}")?;
                }
                f.write_str(")")
            }
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn fail<T>(&self, what: &str) -> Result<T> {
        Err(ComplementError::InvalidArgument(format!(
            "expected {what} at offset {} of {:?}",
            self.pos, self.text
        )))
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i64> {
        let rest = self.rest();
        let len = rest
            .char_indices()
            .find(|&(i, c)| !(c.is_ascii_digit() || (i == 0 && c == '-')))
            .map_or(rest.len(), |(i, _)| i);
        match rest[..len].parse() {
            Ok(v) => {
                self.pos += len;
                Ok(v)
            }
            Err(_) => self.fail("integer"),
        }
    }

    /// A weighted term starts with digits glued to `*`.
    fn at_weighted_term(&self) -> bool {
        let rest = self.rest().trim_start_matches('-');
        let digits = rest.bytes().take_while(u8::is_ascii_digit).count();
        digits > 0 && rest[digits..].starts_with('*')
    }

    fn expr(&mut self) -> Result<ArithExpression> {
        if self.eat("s") {
            let v = self.integer()?;
            return match u32::try_from(v) {
                Ok(v) if v >= 1 => Ok(ArithExpression::Variable(v)),
                _ => self.fail("variable index >= 1"),
            };
        }
        if !self.eat("(") {
            return self.integer().map(ArithExpression::Constant);
        }
        if self.eat("1 - ") {
            let inner = self.expr()?;
            return if self.eat(")") {
                Ok(ArithExpression::one_minus(inner))
            } else {
                self.fail("')'")
            };
        }
        if self.at_weighted_term() {
            let mut terms = Vec::new();
            loop {
                let w = self.integer()?;
                if !self.eat("*") {
                    return self.fail("'*'");
                }
                terms.push((w, self.expr()?));
                if self.eat(")") {
                    return Ok(ArithExpression::WeightedSum(terms));
                }
                if !self.eat(" + ") {
                    return self.fail("' + '");
                }
            }
        }
        let mut children = Vec::new();
        if self.eat(")") {
            return Ok(ArithExpression::Product(children));
        }
        loop {
            children.push(self.expr()?);
            if self.eat(")") {
                return Ok(ArithExpression::Product(children));
            }
            if !self.eat(" * ") {
                return self.fail("' * '");
            }
        }
    }
}

impl FromStr for ArithExpression {
    type Err = ComplementError;

    fn from_str(text: &str) -> Result<Self> {
        let mut p = Parser { text, pos: 0 };
        let e = p.expr()?;
        if p.pos != text.len() {
            return p.fail("end of input");
        }
        Ok(e)
    }
}

impl Serialize for ArithExpression {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ArithExpression {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

fn literal_expr(l: Literal) -> ArithExpression {
    if l.positive {
        ArithExpression::Variable(l.var)
    } else {
        ArithExpression::one_minus(ArithExpression::Variable(l.var))
    }
}

fn clause_expr(c: &Clause) -> ArithExpression {
    match c.literals() {
        [] => ArithExpression::Constant(1),
        [l] => literal_expr(*l),
        lits => ArithExpression::Product(lits.iter().copied().map(literal_expr).collect()),
    }
}

/// Literal `s_i` becomes `s_i`, `!s_i` becomes `1 - s_i`, AND becomes a
/// product, and `A | B` becomes `1 - (1 - A)(1 - B)`, folded left.
pub fn arithmetize_simple(d: &DnfFormula) -> ArithExpression {
    let mut clauses = d.clauses().iter().map(clause_expr);
    let Some(first) = clauses.next() else {
        return ArithExpression::Constant(0);
    };
    clauses.fold(first, |acc, next| {
        ArithExpression::one_minus(ArithExpression::Product(vec![
            ArithExpression::one_minus(acc),
            ArithExpression::one_minus(next),
        ]))
    })
}

/// `sum_i 2^(i-1) * z_i` over the per-bit expressions, least significant
/// first.
pub fn combine_bits_weighted(bit_exprs: Vec<ArithExpression>) -> Result<ArithExpression> {
    if bit_exprs.len() > 62 {
        return Err(ComplementError::InvalidArgument(format!(
            "{} output bits exceed the weight range",
            bit_exprs.len()
        )));
    }
    Ok(ArithExpression::WeightedSum(
        bit_exprs
            .into_iter()
            .enumerate()
            .map(|(i, e)| (1i64 << i, e))
            .collect(),
    ))
}

/// Evaluates `e` on the `b`-bit input `x`.
pub fn arith_eval(e: &ArithExpression, x: Word, b: u32) -> Result<i128> {
    if b < Word::BITS && x >> b != 0 {
        return Err(ComplementError::OutOfRange { key: x, bits: b });
    }
    Ok(e.eval(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::dnf::Literal;

    fn var(v: u32) -> ArithExpression {
        ArithExpression::Variable(v)
    }

    #[test]
    fn single_clause_substitution() {
        let d = DnfFormula::new(2, vec![Clause::new(vec![Literal::neg(1), Literal::pos(2)]).unwrap()])
            .unwrap();
        let e = arithmetize_simple(&d);
        assert_eq!(
            e,
            ArithExpression::Product(vec![ArithExpression::one_minus(var(1)), var(2)])
        );
        assert_eq!(e.to_string(), "((1 - s1) * s2)");
    }

    #[test]
    fn disjunction_rule() {
        let a = Clause::new(vec![Literal::pos(1)]).unwrap();
        let b = Clause::new(vec![Literal::pos(2)]).unwrap();
        let e = arithmetize_simple(&DnfFormula::new(2, vec![a, b]).unwrap());
        assert_eq!(e.to_string(), "(1 - ((1 - s1) * (1 - s2)))");
        assert_eq!(arith_eval(&e, 3, 2).unwrap(), 1);
        assert_eq!(arith_eval(&e, 0, 2).unwrap(), 0);
        assert_eq!(arith_eval(&e, 2, 2).unwrap(), 1);
    }

    #[test]
    fn constants() {
        let t = DnfFormula::new(1, vec![Clause::default()]).unwrap();
        assert_eq!(arithmetize_simple(&t), ArithExpression::Constant(1));
        let f = DnfFormula::new(1, vec![]).unwrap();
        assert_eq!(arithmetize_simple(&f), ArithExpression::Constant(0));
    }

    #[test]
    fn weighted_combination() {
        let g = combine_bits_weighted(vec![ArithExpression::Constant(1), var(1)]).unwrap();
        assert_eq!(arith_eval(&g, 0, 1).unwrap(), 1);
        assert_eq!(arith_eval(&g, 1, 1).unwrap(), 3);
        assert_eq!(g.to_string(), "(1*1 + 2*s1)");

        let three = combine_bits_weighted(vec![ArithExpression::Constant(1); 2]).unwrap();
        assert_eq!(arith_eval(&three, 0, 1).unwrap(), 3);
        assert_eq!(arith_eval(&three, 1, 1).unwrap(), 3);

        let zero = combine_bits_weighted(vec![ArithExpression::Constant(0); 3]).unwrap();
        assert_eq!(arith_eval(&zero, 1, 1).unwrap(), 0);
    }

    #[test]
    fn eval_rejects_wide_input() {
        assert!(matches!(
            arith_eval(&var(1), 2, 1),
            Err(ComplementError::OutOfRange { key: 2, bits: 1 })
        ));
    }

    #[test]
    fn text_round_trip() {
        let samples = [
            "(1*1 + 2*s1)",
            "(1 - ((1 - s1) * (1 - s2)))",
            "((1 - s1) * s2 * s3)",
            "(4*(1 - s2) + -3*0)",
            "()",
            "(s1)",
            "7",
        ];
        for text in samples {
            let e: ArithExpression = text.parse().unwrap();
            assert_eq!(e.to_string(), text);
        }
        assert!("(s1 * )".parse::<ArithExpression>().is_err());
        assert!("s0".parse::<ArithExpression>().is_err());
        assert!("(1 - s1".parse::<ArithExpression>().is_err());
    }
}
