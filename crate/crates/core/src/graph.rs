//! Small graph routines shared by the word and tree automata.

/// Strongly connected components of the graph on `0..n`, by iterative Tarjan.
///
/// Returns the component id of every node. Ids are assigned in reverse
/// topological order of the condensation (sinks first).
pub(crate) fn scc(n: usize, succ: &[Vec<usize>]) -> Vec<usize> {
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    // (node, position in its successor list)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if let Some(&w) = succ[v].get(*pos) {
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    comp
}

/// Marks nodes lying on some cycle (nontrivial component or self-loop).
pub(crate) fn on_cycle(succ: &[Vec<usize>], comp: &[usize]) -> Vec<bool> {
    let n = succ.len();
    let mut size = vec![0usize; comp.iter().copied().max().map_or(0, |m| m + 1)];
    for &c in comp {
        size[c] += 1;
    }
    (0..n)
        .map(|v| size[comp[v]] > 1 || succ[v].contains(&v))
        .collect()
}

/// Nodes reachable from `sources`.
pub(crate) fn reachable(succ: &[Vec<usize>], sources: impl IntoIterator<Item = usize>) -> Vec<bool> {
    let mut seen = vec![false; succ.len()];
    let mut stack: Vec<usize> = Vec::new();
    for s in sources {
        if !seen[s] {
            seen[s] = true;
            stack.push(s);
        }
    }
    while let Some(v) = stack.pop() {
        for &w in &succ[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Nodes that can reach some node in `targets`.
pub(crate) fn coreachable(succ: &[Vec<usize>], targets: &[bool]) -> Vec<bool> {
    let n = succ.len();
    let mut pred = vec![Vec::new(); n];
    for (v, ws) in succ.iter().enumerate() {
        for &w in ws {
            pred[w].push(v);
        }
    }
    let sources = (0..n).filter(|&v| targets[v]);
    reachable(&pred, sources)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scc_finds_cycles() {
        // 0 -> 1 -> 2 -> 1, 2 -> 3, 3 -> 3
        let succ = vec![vec![1], vec![2], vec![1, 3], vec![3]];
        let comp = scc(4, &succ);
        assert_eq!(comp[1], comp[2]);
        assert_ne!(comp[0], comp[1]);
        assert_ne!(comp[3], comp[1]);
        let cyc = on_cycle(&succ, &comp);
        assert_eq!(cyc, vec![false, true, true, true]);
    }

    #[test]
    fn reachability() {
        let succ = vec![vec![1], vec![], vec![0]];
        assert_eq!(reachable(&succ, [0]), vec![true, true, false]);
        assert_eq!(
            coreachable(&succ, &[false, true, false]),
            vec![true, true, true]
        );
    }
}
