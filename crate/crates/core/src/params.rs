//! Necessary conditions on the parameters `(n, s, t)` of a thick generalized
//! `n`-gon, including the known results for one finite and one infinite
//! parameter.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A line size or point degree parameter: finite, or explicitly infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Param {
    Finite(u64),
    Infinite,
}

impl Param {
    pub fn finite(self) -> Option<u64> {
        match self {
            Param::Finite(v) => Some(v),
            Param::Infinite => None,
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Finite(v) => write!(f, "{v}"),
            Param::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinite" | "∞" => Ok(Param::Infinite),
            v => v
                .parse()
                .map(Param::Finite)
                .map_err(|_| Error::InvalidParameters(format!("`{s}` is neither a number nor `inf`"))),
        }
    }
}

impl Serialize for Param {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Param::Finite(v) => s.serialize_u64(*v),
            Param::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ParamQuery {
    pub n: u64,
    pub s: Param,
    pub t: Param,
}

impl ParamQuery {
    pub fn new(n: u64, s: Param, t: Param) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameters(format!("gonality {n} is below 3")));
        }
        for (name, v) in [("s", s), ("t", t)] {
            if let Param::Finite(v) = v {
                if v < 2 {
                    return Err(Error::InvalidParameters(format!(
                        "{name} = {v} is not thick (need at least 2)"
                    )));
                }
            }
        }
        Ok(Self { n, s, t })
    }

    pub fn swapped(self) -> Self {
        Self {
            n: self.n,
            s: self.t,
            t: self.s,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
    Open,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "n/a",
            Status::Open => "open",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    OddGonalityEqualOrder,
    FeitHigmanGonality,
    Higman,
    HaemersRoos,
    FeitHigmanSquare,
    BruckRyser,
    LocallyFinite,
}

impl Condition {
    pub const ALL: [Condition; 7] = [
        Condition::OddGonalityEqualOrder,
        Condition::FeitHigmanGonality,
        Condition::Higman,
        Condition::HaemersRoos,
        Condition::FeitHigmanSquare,
        Condition::BruckRyser,
        Condition::LocallyFinite,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Condition::OddGonalityEqualOrder => "odd gonality forces s = t",
            Condition::FeitHigmanGonality => "Feit-Higman gonality",
            Condition::Higman => "Higman bound s <= t^2 <= s^4",
            Condition::HaemersRoos => "Haemers-Roos bound s <= t^3 <= s^9",
            Condition::FeitHigmanSquare => "Feit-Higman: 2st is a perfect square",
            Condition::BruckRyser => "Bruck-Ryser",
            Condition::LocallyFinite => "locally finite polygons",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub condition: Condition,
    pub status: Status,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub query: ParamQuery,
    pub verdicts: Vec<Verdict>,
}

impl ConditionReport {
    pub fn status(&self, c: Condition) -> Status {
        self.verdicts
            .iter()
            .find(|v| v.condition == c)
            .map(|v| v.status)
            .expect("every condition is reported")
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| v.status == Status::Fail)
    }

    pub fn any_failure(&self) -> bool {
        self.failures().next().is_some()
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "parameters n = {}, s = {}, t = {}",
            self.query.n, self.query.s, self.query.t
        )?;
        for v in &self.verdicts {
            writeln!(f, "  [{:>4}] {}: {}", v.status, v.condition.name(), v.message)?;
        }
        Ok(())
    }
}

pub fn is_perfect_square(m: u64) -> bool {
    let r = m.isqrt();
    r * r == m
}

/// `m = a² + b²` for some `a, b >= 0`: every prime `≡ 3 (mod 4)` divides `m`
/// to an even power.
pub fn is_sum_of_two_squares(m: u64) -> bool {
    if m == 0 {
        return true;
    }
    let mut rest = m;
    while rest.is_multiple_of(2) {
        rest /= 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= rest {
        if rest.is_multiple_of(d) {
            let mut e = 0;
            while rest.is_multiple_of(d) {
                rest /= d;
                e += 1;
            }
            if d % 4 == 3 && e % 2 == 1 {
                return false;
            }
        }
        d += 2;
    }
    // what remains is 1 or a prime to the first power
    rest % 4 != 3
}

fn verdict(condition: Condition, status: Status, message: impl Into<String>) -> Verdict {
    Verdict {
        condition,
        status,
        message: message.into(),
    }
}

/// Evaluates every implemented condition once, in [`Condition::ALL`] order.
pub fn check_parameters(q: &ParamQuery) -> ConditionReport {
    let n = q.n;
    let both = q.s.finite().zip(q.t.finite());
    let mixed = q.s.finite().is_some() != q.t.finite().is_some();
    let mut verdicts = Vec::with_capacity(Condition::ALL.len());

    verdicts.push(match (n % 2 == 1, q.s, q.t) {
        (false, _, _) => verdict(Condition::OddGonalityEqualOrder, Status::NotApplicable, "n is even"),
        (true, Param::Infinite, Param::Infinite) => verdict(
            Condition::OddGonalityEqualOrder,
            Status::NotApplicable,
            "both parameters infinite; cardinals are not compared",
        ),
        (true, s, t) if s == t => verdict(Condition::OddGonalityEqualOrder, Status::Pass, format!("s = t = {s}")),
        (true, s, t) => verdict(Condition::OddGonalityEqualOrder, Status::Fail, format!("s = {s} differs from t = {t}")),
    });

    verdicts.push(match both {
        None => verdict(Condition::FeitHigmanGonality, Status::NotApplicable, "an infinite parameter"),
        Some(_) if matches!(n, 3 | 4 | 6 | 8) => {
            verdict(Condition::FeitHigmanGonality, Status::Pass, format!("n = {n} is allowed"))
        }
        Some(_) if n.is_multiple_of(2) => verdict(
            Condition::FeitHigmanGonality,
            Status::Fail,
            format!("no finite thick generalized {n}-gon exists for even n outside {{4, 6, 8}}"),
        ),
        Some(_) => verdict(
            Condition::FeitHigmanGonality,
            Status::Open,
            format!("odd n = {n} > 3: only s = t is asserted here"),
        ),
    });

    verdicts.push(match both {
        Some((s, t)) if n == 4 || n == 8 => {
            let ok = s as u128 <= (t as u128).pow(2) && t as u128 <= (s as u128).pow(2);
            if ok {
                verdict(Condition::Higman, Status::Pass, format!("{s} <= {t}^2 and {t} <= {s}^2"))
            } else if s as u128 > (t as u128).pow(2) {
                verdict(Condition::Higman, Status::Fail, format!("s <= t^2 violated ({s} > {})", t as u128 * t as u128))
            } else {
                verdict(Condition::Higman, Status::Fail, format!("t <= s^2 violated ({t} > {})", s as u128 * s as u128))
            }
        }
        _ => verdict(Condition::Higman, Status::NotApplicable, "applies to finite n = 4 and n = 8"),
    });

    verdicts.push(match both {
        Some((s, t)) if n == 6 => {
            let (s3, t3) = ((s as u128).pow(3), (t as u128).pow(3));
            if s as u128 <= t3 && t as u128 <= s3 {
                verdict(Condition::HaemersRoos, Status::Pass, format!("{s} <= {t}^3 and {t} <= {s}^3"))
            } else if s as u128 > t3 {
                verdict(Condition::HaemersRoos, Status::Fail, format!("s <= t^3 violated ({s} > {t3})"))
            } else {
                verdict(Condition::HaemersRoos, Status::Fail, format!("t <= s^3 violated ({t} > {s3})"))
            }
        }
        _ => verdict(Condition::HaemersRoos, Status::NotApplicable, "applies to finite n = 6"),
    });

    verdicts.push(match both {
        Some((s, t)) if n == 8 => {
            let v = 2u128 * s as u128 * t as u128;
            let square = u64::try_from(v).map(is_perfect_square).unwrap_or_else(|_| {
                let r = v.isqrt();
                r * r == v
            });
            if square {
                verdict(Condition::FeitHigmanSquare, Status::Pass, format!("2st = {v} is a perfect square"))
            } else {
                verdict(Condition::FeitHigmanSquare, Status::Fail, format!("2st = {v} is not a perfect square"))
            }
        }
        _ => verdict(Condition::FeitHigmanSquare, Status::NotApplicable, "applies to finite n = 8"),
    });

    verdicts.push(match both {
        Some((s, t)) if n == 3 && s == t && matches!(s % 4, 1 | 2) => {
            if is_sum_of_two_squares(s) {
                verdict(Condition::BruckRyser, Status::Pass, format!("{s} is a sum of two squares"))
            } else {
                verdict(
                    Condition::BruckRyser,
                    Status::Fail,
                    format!("order {s} = {} mod 4 is not a sum of two squares", s % 4),
                )
            }
        }
        _ => verdict(
            Condition::BruckRyser,
            Status::NotApplicable,
            "applies to projective planes of order = 1, 2 mod 4",
        ),
    });

    verdicts.push(if !mixed {
        verdict(Condition::LocallyFinite, Status::NotApplicable, "parameters are not mixed")
    } else {
        let finite = q.s.finite().or(q.t.finite()).expect("mixed");
        match (n, finite) {
            (4, 2) => verdict(
                Condition::LocallyFinite,
                Status::Fail,
                "Cameron: if n = 4 and s = 2 then t is finite",
            ),
            (4, 3) => verdict(
                Condition::LocallyFinite,
                Status::Fail,
                "Brouwer: if n = 4 and s = 3 then t is finite",
            ),
            (4, 4) => verdict(
                Condition::LocallyFinite,
                Status::Fail,
                "Cherlin: no locally finite quadrangle with five points on a line",
            ),
            _ => verdict(
                Condition::LocallyFinite,
                Status::Open,
                format!("n = {n} with finite parameter {finite}: nothing is known"),
            ),
        }
    });

    ConditionReport { query: *q, verdicts }
}
