//! p-blocks of irreducible characters, found by reducing central characters
//! modulo a maximal ideal over p.

use serde::Serialize;
use thiserror::Error;

use crate::arith;
use crate::chartab::CharacterTable;
use crate::cyclo::{CycloError, Cyclotomic, FfElem, IdealEmbedding, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlockError {
    #[error("central character value {value} of character {character} is not integral")]
    NotIntegral { character: usize, value: String },
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

/// `omega(K) = |K| chi(g_K) / chi(1)` for one irreducible character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralCharacter {
    pub character: usize,
    pub omega: Vec<Cyclotomic>,
}

pub fn central_characters(table: &CharacterTable) -> Result<Vec<CentralCharacter>, BlockError> {
    let classes = table.classes();
    table
        .irreducibles()
        .iter()
        .enumerate()
        .map(|(i, chi)| {
            let d = chi.degree().expect("irreducible characters have positive degree");
            let omega: Vec<Cyclotomic> = (0..classes.len())
                .map(|k| chi.on_class(k).scale(&Rational::new((classes.size(k) as i64).into(), (d as i64).into())))
                .collect();
            if let Some(bad) = omega.iter().find(|w| !w.is_algebraic_integer()) {
                return Err(BlockError::NotIntegral {
                    character: i,
                    value: bad.to_string(),
                });
            }
            Ok(CentralCharacter { character: i, omega })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockMember {
    pub character: usize,
    pub degree: u64,
    pub height: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub p: u64,
    pub defect: u32,
    pub principal: bool,
    /// Sorted by character index.
    pub members: Vec<BlockMember>,
}

impl Block {
    pub fn character_indices(&self) -> Vec<usize> {
        self.members.iter().map(|m| m.character).collect()
    }

    pub fn contains(&self, character: usize) -> bool {
        self.members.iter().any(|m| m.character == character)
    }
}

/// Block partition using the lexicographically least maximal ideal over `p`.
pub fn block_partition(table: &CharacterTable, p: u64) -> Result<Vec<Block>, BlockError> {
    let emb = IdealEmbedding::new(p, table.exponent());
    block_partition_with(table, p, &emb)
}

/// Block partition for a given embedding of conductor `exp(G)`. Blocks are
/// ordered by their smallest character index, so the principal block is first.
pub fn block_partition_with(table: &CharacterTable, p: u64, emb: &IdealEmbedding) -> Result<Vec<Block>, BlockError> {
    let centrals = central_characters(table)?;
    let mut groups: Vec<(Vec<FfElem>, Vec<usize>)> = Vec::new();
    for cc in &centrals {
        let print = cc
            .omega
            .iter()
            .map(|w| emb.embed(w))
            .collect::<Result<Vec<_>, _>>()?;
        match groups.iter_mut().find(|(fp, _)| *fp == print) {
            Some((_, members)) => members.push(cc.character),
            None => groups.push((print, vec![cc.character])),
        }
    }
    let a = arith::valuation(table.group_order() as u64, p);
    let degrees = table.degrees();
    Ok(groups
        .into_iter()
        .map(|(_, members)| {
            let min_v = members.iter().map(|&i| arith::valuation(degrees[i], p)).min().unwrap_or(0);
            let defect = a - min_v;
            Block {
                p,
                defect,
                principal: members.contains(&table.trivial_index()),
                members: members
                    .iter()
                    .map(|&i| BlockMember {
                        character: i,
                        degree: degrees[i],
                        height: arith::valuation(degrees[i], p) - min_v,
                    })
                    .collect(),
            }
        })
        .collect())
}

/// The block containing the trivial character.
pub fn principal_block(blocks: &[Block]) -> &Block {
    blocks.iter().find(|b| b.principal).expect("the trivial character lies in some block")
}

pub fn height_zero_members(block: &Block) -> Vec<usize> {
    block.members.iter().filter(|m| m.height == 0).map(|m| m.character).collect()
}
