use std::fmt;

use serde::{Deserialize, Serialize};

/// Identifiers of the inference rules. `R*` are the dimension comparisons of the
/// theory; `A*` are auxiliary standard facts the examples need.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RuleId {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R9,
    R10,
    R11,
    R12,
    R13,
    R14,
    R15,
    R16,
    R17,
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
    A8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Rule {
    pub id: RuleId,
    pub name: &'static str,
    /// What the rule asserts, in the form the engine applies it.
    pub statement: &'static str,
    /// The result it rests on, named descriptively.
    pub anchor: &'static str,
}

pub const RULES: &[Rule] = &[
    Rule {
        id: RuleId::R1,
        name: "normal-adamson",
        statement: "if L is normal in K then cd([K : ⟨L⟩]) = cd(K/L)",
        anchor: "relative dimension over a normal subgroup equals the dimension of the quotient",
    },
    Rule {
        id: RuleId::R2,
        name: "normal-bredon",
        statement: "if L is normal in K then cd_⟨L⟩(K) = cd(K/L)",
        anchor: "the orbit category over the subconjugates of a normal subgroup is governed by the quotient",
    },
    Rule {
        id: RuleId::R3,
        name: "adamson-le-bredon",
        statement: "cd([K : F]) <= cd_F(K)",
        anchor: "evaluating a free Bredon resolution at K/1 yields a (K, F)-projective resolution",
    },
    Rule {
        id: RuleId::R4,
        name: "shapiro-bredon",
        statement: "for P <= K, cd_{F∩P}(P) <= cd_F(K)",
        anchor: "restriction of Bredon modules to a subgroup preserves projectives",
    },
    Rule {
        id: RuleId::R5,
        name: "shapiro-relative",
        statement: "for P <= K, cd([P : F∩P]) <= cd([K : F])",
        anchor: "coinduction from a subgroup preserves relatively injective modules",
    },
    Rule {
        id: RuleId::R6,
        name: "takasu-les",
        statement: "cd(K, L) <= max(cd K, cd L + 1), and cd(K, L) = cd(K) when cd(K) > cd(L)",
        anchor: "long exact sequence H^i(K, L) -> H^i(K) -> H^i(L) -> H^{i+1}(K, L)",
    },
    Rule {
        id: RuleId::R7,
        name: "bredon-stallings-swan",
        statement: "for finite Γ, cd_G(G⋊Γ) <= 1 iff G is Γ-free; it is 0 only for trivial G",
        anchor: "equivariant Stallings–Swan theorem for Bredon dimension",
    },
    Rule {
        id: RuleId::R8,
        name: "inassaridze-criterion",
        statement: "for G free and Γ finite, cd([G⋊Γ : Γ]) <= 1 iff H¹(P; G) is trivial for every p-subgroup P; otherwise it is ∞",
        anchor: "p-subgroup criterion and the 1-or-∞ dichotomy for Inassaridze dimension",
    },
    Rule {
        id: RuleId::R9,
        name: "takasu-stallings-swan",
        statement: "cd(G⋊Γ, Γ) <= 1 iff G is free on a free Γ-set",
        anchor: "equivariant Stallings–Swan theorem for relative (Takasu) dimension",
    },
    Rule {
        id: RuleId::R10,
        name: "cd-zero-family",
        statement: "for finite Γ and a family of proper subgroups containing every p-subgroup, cd([Γ : F]) = 0 and cd_F(Γ) >= 2",
        anchor: "averaging over Sylow subgroups splits relative resolutions",
    },
    Rule {
        id: RuleId::R11,
        name: "p-group-proper-family",
        statement: "for a nontrivial p-group P with its proper subgroups, cd([P : F]) = ∞",
        anchor: "mod-p Euler characteristic of relatively projective modules",
    },
    Rule {
        id: RuleId::R12,
        name: "families-coincide",
        statement: "for G torsion-free and Γ finite, the family generated by Γ equals the finite subgroups of G⋊Γ iff H¹(P; G) is trivial for every P <= Γ",
        anchor: "complements of G in G⋊Γ versus finite subgroups",
    },
    Rule {
        id: RuleId::R13,
        name: "product-h1",
        statement: "for torsion-free G_i, H¹(Γ₁×Γ₂; G₁×G₂) = H¹(Γ₁; G₁) × H¹(Γ₂; G₂); for coprime orders every subgroup of the product is a product",
        anchor: "splitting of complements in a product of semidirect products",
    },
    Rule {
        id: RuleId::R14,
        name: "quotient-lower-bound",
        statement: "for N normal in Γ with projection p, cd_{F_N}(Γ/N) <= cd_F(Γ) where F_N = {L : p⁻¹(L) ∈ F}",
        anchor: "Bredon dimension of a quotient with the pushed-forward family",
    },
    Rule {
        id: RuleId::R15,
        name: "axiom",
        statement: "externally established values enter as axioms with a mandatory citation",
        anchor: "cited literature",
    },
    Rule {
        id: RuleId::R16,
        name: "gd-bound",
        statement: "gd_F(K) <= max(3, cd_F(K))",
        anchor: "Eilenberg–Ganea type bound for classifying spaces of families",
    },
    Rule {
        id: RuleId::R17,
        name: "amalgam-lower-bound",
        statement: "for G = A *_C A with C normal in A, cd_G(G⋊G) >= cd(A/C)",
        anchor: "Shapiro's lemma on the cyclic subgroup generated by a pair of stable letters",
    },
    Rule {
        id: RuleId::A1,
        name: "finite-group",
        statement: "a nontrivial finite group has cd = ∞",
        anchor: "periodic nonvanishing cohomology of finite cyclic subgroups",
    },
    Rule {
        id: RuleId::A2,
        name: "trivial-family",
        statement: "relative to the trivial family, Adamson and Bredon dimension equal cd",
        anchor: "for F = {1} both theories reduce to ordinary group cohomology",
    },
    Rule {
        id: RuleId::A3,
        name: "fixed-point-criterion",
        statement: "for an effective admissible action on a nonempty finite flag complex L, H¹(P; H_L) is trivial iff L^P is nonempty",
        anchor: "Leary–Nucinkis fixed-point criterion",
    },
    Rule {
        id: RuleId::A4,
        name: "h1-criterion",
        statement: "a free Γ-group over finite Γ is Γ-free iff H¹(P; G) is trivial for every subgroup P",
        anchor: "Γ-freeness via non-abelian H¹",
    },
    Rule {
        id: RuleId::A5,
        name: "family-spectral-bound",
        statement: "for families G ⊆ FIN, cd_G(K) <= cd_FIN(K) + sup over finite S of cd_{G∩S}(S)",
        anchor: "Martínez-Pérez spectral sequence for a change of families",
    },
    Rule {
        id: RuleId::A6,
        name: "family-contains-group",
        statement: "if K belongs to the family F then cd_F(K) = cd([K : F]) = 0",
        anchor: "the constant functor is projective when K/K is an object",
    },
    Rule {
        id: RuleId::A7,
        name: "restriction-kernel",
        statement: "if restriction H^i(K) -> H^i(L) has nonzero kernel for infinitely many i, then cd(K, L) = ∞",
        anchor: "exactness of H^i(K, L) -> H^i(K) -> H^i(L)",
    },
    Rule {
        id: RuleId::A8,
        name: "isomorphic-subjects",
        statement: "isomorphic pairs and families have equal dimensions",
        anchor: "invariance under isomorphism",
    },
];

pub fn rule(id: RuleId) -> &'static Rule {
    RULES.iter().find(|r| r.id == id).expect("every rule id has an entry")
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_rule_listed_once() {
        let mut ids: Vec<RuleId> = RULES.iter().map(|r| r.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), RULES.len());
        assert_eq!(rule(RuleId::R6).name, "takasu-les");
    }
}
