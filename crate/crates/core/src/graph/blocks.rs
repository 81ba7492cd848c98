use super::{bit, Bits, Graph};
use crate::error::{Error, Result};

/// Blocks (maximal 2-connected pieces and bridges) of a connected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Vertex set of each block as a bit mask, ordered by discovery.
    pub blocks: Vec<u64>,
    pub cut_vertices: u64,
    /// `leaf[i]` holds when block `i` contains at most one cut vertex.
    pub leaf: Vec<bool>,
}

impl BlockDecomposition {
    pub fn block_vertices(&self, i: usize) -> Vec<usize> {
        Bits(self.blocks[i]).collect()
    }

    pub fn cut_vertex_list(&self) -> Vec<usize> {
        Bits(self.cut_vertices).collect()
    }

    pub fn leaf_blocks(&self) -> impl Iterator<Item = u64> + '_ {
        self.blocks
            .iter()
            .zip(&self.leaf)
            .filter(|(_, &l)| l)
            .map(|(&b, _)| b)
    }
}

/// Hopcroft–Tarjan lowpoint decomposition with an edge stack.
pub fn block_decomposition(g: &Graph) -> Result<BlockDecomposition> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.order();
    if n == 1 {
        return Ok(BlockDecomposition {
            blocks: vec![1],
            cut_vertices: 0,
            leaf: vec![true],
        });
    }

    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut parent = vec![UNSEEN; n];
    let mut pending = vec![0u64; n];
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks = Vec::new();
    let mut cut_vertices = 0u64;
    let mut root_children = 0;
    let mut time = 0;

    disc[0] = 0;
    low[0] = 0;
    time += 1;
    pending[0] = g.neighbors(0);
    let mut stack = vec![0usize];

    while let Some(&v) = stack.last() {
        if pending[v] != 0 {
            let w = pending[v].trailing_zeros() as usize;
            pending[v] &= pending[v] - 1;
            if disc[w] == UNSEEN {
                parent[w] = v;
                disc[w] = time;
                low[w] = time;
                time += 1;
                pending[w] = g.neighbors(w);
                edge_stack.push((v, w));
                if v == 0 {
                    root_children += 1;
                }
                stack.push(w);
            } else if w != parent[v] && disc[w] < disc[v] {
                low[v] = low[v].min(disc[w]);
                edge_stack.push((v, w));
            }
        } else {
            stack.pop();
            let p = parent[v];
            if p == UNSEEN {
                continue;
            }
            low[p] = low[p].min(low[v]);
            if low[v] >= disc[p] {
                if p != 0 {
                    cut_vertices |= bit(p);
                }
                let mut block = 0u64;
                while let Some((a, b)) = edge_stack.pop() {
                    block |= bit(a) | bit(b);
                    if (a, b) == (p, v) {
                        break;
                    }
                }
                blocks.push(block);
            }
        }
    }
    if root_children > 1 {
        cut_vertices |= 1;
    }
    let leaf = blocks
        .iter()
        .map(|b| (b & cut_vertices).count_ones() <= 1)
        .collect();
    Ok(BlockDecomposition {
        blocks,
        cut_vertices,
        leaf,
    })
}
