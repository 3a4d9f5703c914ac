/**
 * hasse.ts - arrange the necessary relation for diagram rendering.
 *
 * The service sends the full necessary grid (reflexive, transitive).
 * Drawing it verbatim would bury the structure under implied arrows, so
 * the screen shows exactly the transitive reduction: alternatives that
 * are necessarily tied collapse into one node, and an edge survives
 * only when no third node sits between its ends. This is presentation
 * restructuring of the received relation, not new preference content.
 */

export interface HasseNode {
  id: string; // joined member ids, stable order
  members: string[];
  layer: number; // 0 = top (undominated)
}

export interface HasseEdge {
  from: string; // better node id
  to: string;
}

export interface HasseDiagram {
  nodes: HasseNode[];
  edges: HasseEdge[];
  layers: string[][]; // node ids per layer, top first
}

/**
 * Build the reduced diagram from the grid as received.
 * `necessary[i][j]` reads "alternative i is necessarily at least as
 * good as alternative j".
 */
export function buildHasse(alternatives: string[], necessary: boolean[][]): HasseDiagram {
  const n = alternatives.length;
  const at = (i: number, j: number) => necessary[i][j] === true;

  // 1. collapse mutual necessity into nodes
  const nodeOf = new Array<number>(n).fill(-1);
  const groups: number[][] = [];
  for (let i = 0; i < n; i++) {
    if (nodeOf[i] !== -1) continue;
    const members = [i];
    nodeOf[i] = groups.length;
    for (let j = i + 1; j < n; j++) {
      if (nodeOf[j] === -1 && at(i, j) && at(j, i)) {
        nodeOf[j] = groups.length;
        members.push(j);
      }
    }
    groups.push(members);
  }

  // 2. strict order between nodes
  const better = (a: number, b: number) =>
    a !== b && at(groups[a][0], groups[b][0]) && !at(groups[b][0], groups[a][0]);

  // 3. transitive reduction: drop covered edges
  const edges: [number, number][] = [];
  for (let a = 0; a < groups.length; a++) {
    for (let b = 0; b < groups.length; b++) {
      if (!better(a, b)) continue;
      let covered = false;
      for (let c = 0; c < groups.length && !covered; c++) {
        covered = c !== a && c !== b && better(a, c) && better(c, b);
      }
      if (!covered) edges.push([a, b]);
    }
  }

  // 4. layering by longest chain from the top
  const layerOf = new Array<number>(groups.length).fill(0);
  let changed = true;
  while (changed) {
    changed = false;
    for (const [a, b] of edges) {
      if (layerOf[b] < layerOf[a] + 1) {
        layerOf[b] = layerOf[a] + 1;
        changed = true;
      }
    }
  }

  const idOf = (g: number) =>
    groups[g]
      .map((i) => alternatives[i])
      .sort()
      .join(' = ');

  const nodes: HasseNode[] = groups.map((members, g) => ({
    id: idOf(g),
    members: members.map((i) => alternatives[i]).sort(),
    layer: layerOf[g],
  }));

  const depth = Math.max(0, ...layerOf);
  const layers: string[][] = Array.from({ length: depth + 1 }, () => []);
  nodes.forEach((node, g) => layers[layerOf[g]].push(node.id));

  return {
    nodes,
    edges: edges.map(([a, b]) => ({ from: idOf(a), to: idOf(b) })),
    layers,
  };
}
