use alloc::vec::Vec;

const EMPTY: u32 = u32::MAX;
const LEAF: u32 = 1 << 31;

/// Binary trie over a prefix-free code. Leaves carry a `u32` payload.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub(crate) struct PrefixTrie {
    nodes: Vec<[u32; 2]>,
}

pub(crate) enum Walk {
    Inner(u32),
    Leaf(u32),
    Dead,
}

impl PrefixTrie {
    /// Builds a trie from `(codeword, payload)` pairs. Returns `None` if the
    /// codewords are not prefix-free or one is empty.
    pub(crate) fn build<'a, I>(codes: I) -> Option<Self>
    where
        I: IntoIterator<Item = (&'a [bool], u32)>,
    {
        let mut nodes = alloc::vec![[EMPTY; 2]];
        for (code, payload) in codes {
            debug_assert!(payload < LEAF);
            let (last, prefix) = code.split_last()?;
            let mut node = 0usize;
            for &b in prefix {
                let child = nodes[node][b as usize];
                node = if child == EMPTY {
                    nodes.push([EMPTY; 2]);
                    let id = (nodes.len() - 1) as u32;
                    nodes[node][b as usize] = id;
                    id as usize
                } else if child & LEAF != 0 {
                    return None;
                } else {
                    child as usize
                };
            }
            let slot = &mut nodes[node][*last as usize];
            if *slot != EMPTY {
                return None;
            }
            *slot = payload | LEAF;
        }
        Some(PrefixTrie { nodes })
    }

    pub(crate) const ROOT: u32 = 0;

    #[inline]
    pub(crate) fn walk(&self, node: u32, bit: bool) -> Walk {
        match self.nodes[node as usize][bit as usize] {
            EMPTY => Walk::Dead,
            v if v & LEAF != 0 => Walk::Leaf(v & !LEAF),
            v => Walk::Inner(v),
        }
    }
}
