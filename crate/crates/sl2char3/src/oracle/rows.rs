//! The case tables as data: row identifiers, printed decompositions, and the
//! reading the oracle applies where the printed notation needs one.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Which closed-form result a pair falls under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Table {
    /// `1 (x) V = V`.
    Thm1,
    /// `2 (x) 2 = 1 + 3`.
    Thm2,
    /// `2 (x) Tt(b,1/b,0)`.
    Thm3,
    /// `2 (x) T(b,c,d)`.
    TwoT,
    /// `Tt(b,1/b,0) (x) Tt(beta,1/beta,0)`.
    TtTt,
    /// `Tt(b,1/b,0) (x) T(beta,gamma,delta)`.
    TtT,
    /// `T(b,c,d) (x) T(beta,gamma,delta)` with `gamma = -c`.
    TTOpposite,
    /// `T(b,c,d) (x) T(beta,gamma,delta)` with `gamma != -c`.
    TTGeneral,
}

impl Table {
    pub const ALL: [Table; 8] = [
        Table::Thm1,
        Table::Thm2,
        Table::Thm3,
        Table::TwoT,
        Table::TtTt,
        Table::TtT,
        Table::TTOpposite,
        Table::TTGeneral,
    ];

    /// Number used by `--scope table:N`: 1 for the theorem clauses, 2 to 5
    /// for the tables (both `T (x) T` tables are number 5).
    pub fn number(self) -> u8 {
        match self {
            Table::Thm1 | Table::Thm2 | Table::Thm3 => 1,
            Table::TwoT => 2,
            Table::TtTt => 3,
            Table::TtT => 4,
            Table::TTOpposite | Table::TTGeneral => 5,
        }
    }

    /// Short stable label used in reports.
    pub fn label(self) -> &'static str {
        match self {
            Table::Thm1 => "thm-1",
            Table::Thm2 => "thm-2",
            Table::Thm3 => "thm-3",
            Table::TwoT => "table-2",
            Table::TtTt => "table-3",
            Table::TtT => "table-4",
            Table::TTOpposite => "table-5",
            Table::TTGeneral => "table-5'",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            Table::Thm1 => "1 ⊗ V",
            Table::Thm2 => "2 ⊗ 2",
            Table::Thm3 => "2 ⊗ Tt(b,1/b,0)",
            Table::TwoT => "2 ⊗ T(b,c,d)",
            Table::TtTt => "Tt(b,1/b,0) ⊗ Tt(β,1/β,0)",
            Table::TtT => "Tt(b,1/b,0) ⊗ T(β,γ,δ)",
            Table::TTOpposite => "T(b,c,d) ⊗ T(β,γ,δ), γ = -c",
            Table::TTGeneral => "T(b,c,d) ⊗ T(β,γ,δ), γ ≠ -c",
        }
    }

    pub fn rows(self) -> &'static [RowSpec] {
        match self {
            Table::Thm1 => THM1,
            Table::Thm2 => THM2,
            Table::Thm3 => THM3,
            Table::TwoT => TWO_T,
            Table::TtTt => TT_TT,
            Table::TtT => TT_T,
            Table::TTOpposite => T_T_OPPOSITE,
            Table::TTGeneral => T_T_GENERAL,
        }
    }
}

/// One row: its condition path, the decomposition as printed, and the
/// reading used when the printed form is not a literal descriptor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RowSpec {
    pub id: &'static str,
    pub printed: &'static str,
    pub reading: Option<&'static str>,
}

const fn row(id: &'static str, printed: &'static str) -> RowSpec {
    RowSpec {
        id,
        printed,
        reading: None,
    }
}

const fn read(id: &'static str, printed: &'static str, reading: &'static str) -> RowSpec {
    RowSpec {
        id,
        printed,
        reading: Some(reading),
    }
}

/// A table together with a row index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CaseId {
    pub table: Table,
    pub row: usize,
}

impl CaseId {
    pub fn spec(&self) -> &'static RowSpec {
        &self.table.rows()[self.row]
    }

    /// Stable identifier such as `table-2: c=0; d=0; b=0`.
    pub fn key(&self) -> String {
        format!("{}: {}", self.table.label(), self.spec().id)
    }

    /// Every row of every table.
    pub fn all() -> Vec<CaseId> {
        Table::ALL
            .iter()
            .flat_map(|&table| (0..table.rows().len()).map(move |row| CaseId { table, row }))
            .collect()
    }

    pub fn from_key(key: &str) -> Option<CaseId> {
        CaseId::all().into_iter().find(|c| c.key() == key)
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

const THM1: &[RowSpec] = &[row("1 ⊗ V", "V")];
const THM2: &[RowSpec] = &[row("2 ⊗ 2", "1 ⊕ 3")];
const THM3: &[RowSpec] = &[row("2 ⊗ Tt(b,1/b,0)", "Tt(b,1/b,0) ⊕ T(1/b,0,0)")];

pub(crate) mod two_t {
    pub const C0_D0_B0: usize = 0;
    pub const C0_D0_B: usize = 1;
    pub const C0_D1_B0: usize = 2;
    pub const C0_D1_B: usize = 3;
    pub const C0_D2_B0: usize = 4;
    pub const C0_D2_B: usize = 5;
    pub const C0_DX: usize = 6;
    pub const C_D0_B0: usize = 7;
    pub const C_D0_BINV: usize = 8;
    pub const C_D0_B: usize = 9;
    pub const C_DX_B0: usize = 10;
    pub const C_DX_PLUS: usize = 11;
    pub const C_DX_MINUS: usize = 12;
    pub const C_DX_SEMI: usize = 13;
    pub const C_DX_ROOTS: usize = 14;
}

const TWO_T: &[RowSpec] = &[
    read("c=0; d=0; b=0", "M1", "the projective cover P(2)"),
    row("c=0; d=0; b≠0", "Tt(1/b,b,0) ⊂+ Tt(1/b,b,0)"),
    row("c=0; d=1; b=0", "3 ⊕ (2 → 1)"),
    row("c=0; d=1; b≠0", "3 ⊕ (2 ⊂+ 1)"),
    row("c=0; d=2; b=0", "3 ⊕ (1 → 2)"),
    row("c=0; d=2; b≠0", "3 ⊕ (1 ⊂+ 2)"),
    row("c=0; d∉F3", "T(b(d-1)/d,0,d-1) ⊕ T(b(d+1)/d,0,d+1)"),
    row("c≠0; d=0; b=0", "T(0,c,1) ⊂+ T(0,c,1)"),
    read("c≠0; d=0; b=1/c", "T(0,c,1) ⊕ T(0,c,1)", "T(0,c,1) ⊕ T(2/c,c,1)"),
    row("c≠0; d=0; b≠0,1/c", "T(b+√(b/c),c,1) ⊕ T(b-√(b/c),c,1)"),
    row("c≠0; d∉F3; b=0", "T(0,c,d+1) ⊕ T(0,c,d-1)"),
    row("c≠0; d∉F3; 1-bc+d=0", "T(0,c,d) ⊕ T(0,c,d+1)"),
    row("c≠0; d∉F3; 1-bc-d=0", "T(0,c,d-1) ⊕ T(0,c,d)"),
    row("c≠0; d∉F3; b≠0, 1-bc±d≠0; bc+d²=0", "T(b+d/c,c,d+1) ⊂+ T(b+d/c,c,d+1)"),
    row(
        "c≠0; d∉F3; b≠0, 1-bc±d≠0; bc+d²≠0",
        "T(b+(d+√(bc+d²))/c,c,d+1) ⊕ T(b+(d-√(bc+d²))/c,c,d+1)",
    ),
];

const TT_TT: &[RowSpec] = &[
    row("b=-β", "3 ⊕ (2 ← 1) ⊕ (1 ← 2)"),
    row(
        "b≠-β",
        "T((b+β)/(bβ),0,0) ⊕ Tt(bβ/(b+β),(b+β)/(bβ),0) ⊕ Tt(bβ/(b+β),(b+β)/(bβ),0)",
    ),
];

pub(crate) mod tt_t {
    pub const G0_D0_SPECIAL: usize = 0;
    pub const G0_D0: usize = 1;
    pub const G0_D1: usize = 2;
    pub const G0_D2: usize = 3;
    pub const G0_DX_SPECIAL: usize = 4;
    pub const G0_DX: usize = 5;
    pub const G_D0_SPECIAL: usize = 6;
    pub const G_D0: usize = 7;
    pub const G_DX_J0: usize = 8;
    pub const G_DX_ROOTS: usize = 9;
    pub const G_DX_SEMI: usize = 10;
}

const TT_T: &[RowSpec] = &[
    read(
        "γ=0; δ=0; β=-1/b",
        "3 ⊕ (2 ⊂+ (1 → 2 ← 1))",
        "3 ⊕ P(2): the 6-dim part has top 2 and factors {1,1,2,2}",
    ),
    read(
        "γ=0; δ=0; β≠-1/b",
        "Tt(b/(1+bβ),(1+bβ)/b,0) ⊂+ (Tt(b/(1+bβ),(1+bβ)/b,0) ⊕ T((1+bβ)/b,0,0))",
        "(Tt ⊂+ Tt) ⊕ T((1+bβ)/b,0,0)",
    ),
    read(
        "γ=0; δ=1",
        "Tt(b,1/b,0) ⊂+ (Tt(b,1/b,0) ⊕ T(1/b,0,0))",
        "(Tt ⊂+ Tt) ⊕ T(1/b,0,0)",
    ),
    read(
        "γ=0; δ=2",
        "Tt(b,1/b,0) ⊂+ (Tt(b,1/b,0) ⊕ T(1/b,0,0))",
        "(Tt ⊂+ Tt) ⊕ T(1/b,0,0)",
    ),
    row("γ=0; δ∉F3; bβ(1-δ²)=-1", "T(0,0,δ-1) ⊕ T(0,0,δ) ⊕ T(0,0,δ+1)"),
    read(
        "γ=0; δ∉F3; bβ(1-δ²)≠-1",
        "T(J,0,δ-1) ⊕ T(J,0,δ) ⊕ T(J,0,δ+1)",
        "leaf T(x,0,w) with x = J/(b(1-w²)), the value fixed by X+^3 = J/b",
    ),
    read(
        "γ≠0; δ=0; bβ(1-βγ)²=-1",
        "T(0,γ,-1) ⊂+ (T(0,γ,0) ⊗ T(0,γ,-1))",
        "⊗ read as ⊕; then (T(0,γ,-1) ⊂+ T(0,γ,-1)) ⊕ T(0,γ,0)",
    ),
    read(
        "γ≠0; δ=0; bβ(1-βγ)²≠-1",
        "T(ρ1,c,0) ⊕ T(ρ2,c,0) ⊕ T(ρ3,c,0)",
        "leaf T(ρi/γ,γ,0): X+X- = ρi on the top weight space and c read as γ",
    ),
    row("γ≠0; δ∉F3; J=0", "T(0,γ,δ-1) ⊕ T(0,γ,δ) ⊕ T(0,γ,δ+1)"),
    read(
        "γ≠0; δ∉F3; J≠0; -(γ/b)J≠(δ(δ+1)(δ-1))²",
        "T(ρ1,c,δ) ⊕ T(ρ2,c,δ) ⊕ T(ρ3,c,δ)",
        "leaf T(ρi/γ,γ,δ): X+X- = ρi on the top weight space and c read as γ",
    ),
    read(
        "γ≠0; δ∉F3; J≠0; -(γ/b)J=(δ(δ+1)(δ-1))²",
        "T((1-δ²)/c,c,δ) ⊂+ (T((1-δ²)/c,c,δ) ⊕ T(-δ²/c,c,δ))",
        "c read as γ; then (T ⊂+ T) ⊕ T(-δ²/γ,γ,δ)",
    ),
];

pub(crate) mod t_t_opposite {
    pub const EXCEPTIONAL: usize = 0;
    pub const S0_NEG_Q0: usize = 1;
    pub const S0_NEG_Q: usize = 2;
    pub const S0_Q0: usize = 3;
    pub const S0_Q: usize = 4;
    pub const S1_DM_EQ: usize = 5;
    pub const S1_DM_NE: usize = 6;
    pub const S1_D_EQ: usize = 7;
    pub const S1_D_NE: usize = 8;
    pub const S2_DP_EQ: usize = 9;
    pub const S2_DP_NE: usize = 10;
    pub const S2_D_EQ: usize = 11;
    pub const S2_D_NE: usize = 12;
    pub const SX_K0: usize = 13;
    pub const SX_K: usize = 14;
}

const T_T_OPPOSITE: &[RowSpec] = &[
    row("b=1/c, d=0, β=1/γ, δ=0", "3 ⊕ (1 → 2) ⊕ (2 → 1)"),
    read(
        "d+δ=0; β=-b; Q=0",
        "1 ⊂+ ((2 ⊂+ 1) ⊕ 2 ⊕ 3)",
        "3 ⊕ (2 ⊂+ 1) ⊕ (1 ⊂+ 2): the top 1 is glued onto the lone 2",
    ),
    read(
        "d+δ=0; β=-b; Q≠0",
        "1 ⊂+ (2 ⊂+ (3 ⊕ (1 ← 2)))",
        "3 ⊕ P(1): the 6-dim part has top 1 and factors {1,1,2,2}",
    ),
    read(
        "d+δ=0; β≠-b; Q=0",
        "2 ⊂+ (1 ⊂+ (3 ⊕ (2 ← 1)))",
        "3 ⊕ P(2): the 6-dim part has top 2 and factors {1,1,2,2}",
    ),
    read(
        "d+δ=0; β≠-b; Q≠0",
        "Tt(1/K,K,0) ⊂+ (T(K,0,0) ⊕ Tt(1/K,K,0))",
        "(Tt ⊂+ Tt) ⊕ T(K,0,0)",
    ),
    read(
        "d+δ=1; d=-1; β=b",
        "1 ⊂+ ((2 ⊂+ 1) ⊕ 2 ⊕ 3)",
        "3 ⊕ (2 ⊂+ 1) ⊕ (1 ⊂+ 2): the top 1 is glued onto the lone 2",
    ),
    read(
        "d+δ=1; d=-1; β≠b",
        "1 ⊂+ (3 ⊕ (2 → 1 ← 2))",
        "3 ⊕ P(1): the 6-dim part has top 1 and factors {1,1,2,2}",
    ),
    read(
        "d+δ=1; d≠-1; (1-d)b=dβ",
        "2 ⊂+ (3 ⊕ (1 → 2 ← 1))",
        "3 ⊕ P(2): the 6-dim part has top 2 and factors {1,1,2,2}",
    ),
    read(
        "d+δ=1; d≠-1; (1-d)b≠dβ",
        "Tt(1/K,K,0) ⊂+ (T(K,0,0) ⊕ Tt(1/K,K,0))",
        "(Tt ⊂+ Tt) ⊕ T(K,0,0)",
    ),
    row("d+δ=2; d=1; β=b", "3 ⊕ (2 ⊂+ 1) ⊕ (1 ⊂+ 2)"),
    read(
        "d+δ=2; d=1; β≠b",
        "1 ⊂+ (3 ⊕ (2 → 1 ← 2))",
        "3 ⊕ P(1): the 6-dim part has top 1 and factors {1,1,2,2}",
    ),
    read(
        "d+δ=2; d≠1; (1+d)b=-dβ",
        "2 ⊂+ (1 ⊂+ ((1 ← 2) ⊕ 3))",
        "3 ⊕ P(2): the 6-dim part has top 2 and factors {1,1,2,2}",
    ),
    read(
        "d+δ=2; d≠1; (1+d)b≠-dβ",
        "Tt(1/K,K,0) ⊂+ (T(K,0,0) ⊕ Tt(1/K,K,0))",
        "(Tt ⊂+ Tt) ⊕ T(K,0,0)",
    ),
    row("d+δ∉F3; K=0", "T(0,0,d+δ-1) ⊕ T(0,0,d+δ) ⊕ T(0,0,d+δ+1)"),
    read(
        "d+δ∉F3; K≠0",
        "T(K,0,d+δ-1) ⊕ T(K,0,d+δ) ⊕ T(K,0,d+δ+1)",
        "leaf T(x,0,w) with x = K/(1-w²), the value fixed by X+^3 = K",
    ),
];

pub(crate) mod t_t_general {
    pub const EXCEPTIONAL: usize = 0;
    pub const K0_S0: usize = 1;
    pub const K0_SX: usize = 2;
    pub const K_DOUBLE_SPLIT: usize = 3;
    pub const K_DOUBLE_SEMI: usize = 4;
    pub const K_SIMPLE: usize = 5;
}

const T_T_GENERAL: &[RowSpec] = &[
    row(
        "b=1/c, d=0, β=1/γ, δ=0",
        "T(0,(b+β)/(bβ),-1) ⊕ T(0,(b+β)/(bβ),0) ⊕ T(0,(b+β)/(bβ),1)",
    ),
    read(
        "K=0; d+δ=0",
        "T(0,c+γ,-1) ⊂+ (T(0,c+γ,0) ⊕ T(0,c+γ,-1))",
        "(T(0,c+γ,-1) ⊂+ T(0,c+γ,-1)) ⊕ T(0,c+γ,0)",
    ),
    row("K=0; d+δ∉F3", "T(0,c+γ,d+δ-1) ⊕ T(0,c+γ,d+δ) ⊕ T(0,c+γ,d+δ+1)"),
    read(
        "K≠0; D=-K(c+γ); bd(c+γ)=√D, βδ=bd, γ(d-d³)=c(δ-δ³)",
        "T(μ1/(c+γ),c+γ,d+δ) ⊕ T(μ2/(c+γ),c+γ,d+δ) ⊕ T(μ3/(c+γ),c+γ,d+δ)",
        "√D taken as (d+δ)(1-(d+δ)²)",
    ),
    read(
        "K≠0; D=-K(c+γ); otherwise",
        "T(-Δ/(c+γ),c+γ,d+δ) ⊂+ (T(-Δ/(c+γ),c+γ,d+δ) ⊕ T((-1-Δ)/(c+γ),c+γ,d+δ))",
        "(T((1-(d+δ)²)/(c+γ),c+γ,d+δ) ⊂+ T((1-(d+δ)²)/(c+γ),c+γ,d+δ)) ⊕ T(-(d+δ)²/(c+γ),c+γ,d+δ)",
    ),
    row(
        "K≠0; D≠-K(c+γ)",
        "T(μ1/(c+γ),c+γ,d+δ) ⊕ T(μ2/(c+γ),c+γ,d+δ) ⊕ T(μ3/(c+γ),c+γ,d+δ)",
    ),
];
