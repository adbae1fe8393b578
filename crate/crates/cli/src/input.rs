//! Parsing of command-line scalars, root sets, families, module specs and
//! evaluation descriptors.

use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use serde_json::Value;

use superweights::algebra::SuperAlgebra;
use superweights::arith::{Cyclotomic, Rational};
use superweights::map_modules::EvaluationDescriptor;
use superweights::modules::{
    even_part_simple, finite_simple_module, highest_weight_simple, kac_module_type_one, odd_rank_one_module,
    outer_tensor, rank1_cuspidal, tensor, ModuleWindow, Weight,
};
use superweights::roots::{Family, RootVector};

use crate::error::CliError;

pub fn family(args: &[String]) -> Result<Family, CliError> {
    let int = |s: &String| s.parse::<u32>().map_err(|_| CliError::usage(format!("expected a nonnegative integer, got {s:?}")));
    let arity = |n: usize| -> Result<(), CliError> {
        if args.len() == n + 1 {
            Ok(())
        } else {
            Err(CliError::usage(format!("family {} takes {n} parameter(s)", args[0])))
        }
    };
    let Some(letter) = args.first() else {
        return Err(CliError::usage("missing family letter"));
    };
    Ok(match letter.as_str() {
        "A" => {
            arity(2)?;
            Family::A { m: int(&args[1])?, n: int(&args[2])? }
        }
        "B" => {
            arity(2)?;
            Family::B { m: int(&args[1])?, n: int(&args[2])? }
        }
        "C" => {
            arity(1)?;
            let k = int(&args[1])?;
            if k < 2 {
                return Err(CliError::usage("C(n) needs n ≥ 2"));
            }
            Family::C { n: k - 1 }
        }
        "D" => {
            arity(2)?;
            Family::D { m: int(&args[1])?, n: int(&args[2])? }
        }
        "D21" => {
            arity(1)?;
            let a: Rational = args[1].parse().map_err(|_| CliError::usage(format!("bad rational {:?}", args[1])))?;
            Family::D21 { a }
        }
        "F4" => {
            arity(0)?;
            Family::F4
        }
        "G3" => {
            arity(0)?;
            Family::G3
        }
        "An" => {
            arity(1)?;
            Family::PureA { n: int(&args[1])? }
        }
        "Cn" => {
            arity(1)?;
            Family::PureC { n: int(&args[1])? }
        }
        other => return Err(CliError::usage(format!("unknown family {other:?}"))),
    })
}

pub fn scalar(s: &str) -> Result<Cyclotomic, CliError> {
    s.trim().parse().map_err(|_| CliError::usage(format!("bad scalar {s:?}")))
}

pub fn scalars(s: &str) -> Result<Vec<Cyclotomic>, CliError> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',').map(scalar).collect()
}

pub fn ints(s: &str) -> Result<Vec<i64>, CliError> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| CliError::usage(format!("bad integer {x:?}"))))
        .collect()
}

/// `1,-1,0;0,1,-1` → two root vectors.
pub fn root_set(s: &str) -> Result<Vec<RootVector>, CliError> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(';').map(|r| ints(r).map(RootVector)).collect()
}

/// `3,0;2,1` → weights; each weight is a comma list.
pub fn weight_list(s: &str) -> Result<Vec<Weight>, CliError> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(';').map(scalars).collect()
}

pub fn algebra(id: &str) -> Result<Arc<SuperAlgebra>, CliError> {
    SuperAlgebra::by_id(id).map_err(CliError::from)
}

/// Inline JSON when the argument starts with `{`, otherwise a file path.
pub fn json_arg(arg: &str) -> Result<Value, CliError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::usage(format!("cannot read {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::usage(format!("invalid JSON in {arg}: {e}")))
}

pub fn is_path(arg: &str) -> bool {
    !arg.trim_start().starts_with('{')
}

pub fn check_path(arg: &str) -> Result<(), CliError> {
    if is_path(arg) && !Path::new(arg).exists() {
        return Err(CliError::usage(format!("no such file: {arg}")));
    }
    Ok(())
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModuleSpec {
    Finite { algebra: String, lambda: Weight },
    HighestWeight { algebra: String, lambda: Weight },
    Dense { algebra: String, mu: Cyclotomic, q0: Cyclotomic, window: i64 },
    OddRankOne { h: Cyclotomic },
    EvenSimple { algebra: String, lambda: Weight },
    Kac { algebra: String, lambda: Weight },
    Tensor { factors: Vec<ModuleSpec> },
    Outer { factors: Vec<ModuleSpec> },
}

impl ModuleSpec {
    pub fn parse(v: Value) -> Result<ModuleSpec, CliError> {
        serde_json::from_value(v).map_err(|e| CliError::usage(format!("bad module spec: {e}")))
    }

    pub fn build(&self) -> Result<ModuleWindow, CliError> {
        Ok(match self {
            ModuleSpec::Finite { algebra: a, lambda } => finite_simple_module(&algebra(a)?, lambda)?,
            ModuleSpec::HighestWeight { algebra: a, lambda } => highest_weight_simple(&algebra(a)?, lambda)?,
            ModuleSpec::Dense { algebra: a, mu, q0, window } => rank1_cuspidal(&algebra(a)?, mu, q0, *window)?,
            ModuleSpec::OddRankOne { h } => odd_rank_one_module(&algebra("q")?, h)?,
            ModuleSpec::EvenSimple { algebra: a, lambda } => even_part_simple(&*algebra(a)?, lambda)?,
            ModuleSpec::Kac { algebra: a, lambda } => {
                let g = algebra(a)?;
                kac_module_type_one(&g, &even_part_simple(&g, lambda)?)?
            }
            ModuleSpec::Tensor { factors } => fold(factors, |x, y| tensor(x, y))?,
            ModuleSpec::Outer { factors } => fold(factors, |x, y| outer_tensor(x, y))?,
        })
    }
}

fn fold(
    factors: &[ModuleSpec],
    op: impl Fn(&ModuleWindow, &ModuleWindow) -> Result<ModuleWindow, superweights::modules::ModError>,
) -> Result<ModuleWindow, CliError> {
    let mut it = factors.iter();
    let first = it.next().ok_or_else(|| CliError::usage("a product needs at least one factor"))?.build()?;
    it.try_fold(first, |acc, f| Ok(op(&acc, &f.build()?)?))
}

pub fn module(arg: &str) -> Result<ModuleWindow, CliError> {
    ModuleSpec::parse(json_arg(arg)?)?.build()
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescriptorSpec {
    pub points: Vec<Cyclotomic>,
    pub factors: Vec<ModuleSpec>,
}

pub fn descriptor(arg: &str) -> Result<EvaluationDescriptor, CliError> {
    let spec: DescriptorSpec =
        serde_json::from_value(json_arg(arg)?).map_err(|e| CliError::usage(format!("bad descriptor: {e}")))?;
    let factors = spec.factors.iter().map(ModuleSpec::build).collect::<Result<Vec<_>, _>>()?;
    Ok(EvaluationDescriptor::new(spec.points, factors)?)
}
