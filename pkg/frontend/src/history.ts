import type { SessionState } from "./types";

// The server session is a tree of positions; a history node is fully
// identified by the fired sequence from the root, so that sequence is
// the key here too.  Re-firing a node the server has seen re-enters the
// same branch, which keeps this mirror isomorphic to the server's tree.

export function pathKey(path: number[]): string {
  return path.join(",");
}

export interface HistoryEntry {
  path: number[];
  // last server state seen at this point; placeholders created while
  // back-filling an auto-played line have none until visited
  state: SessionState | null;
  children: number[]; // child edges (fired node numbers), creation order
}

export interface JumpPlan {
  undos: number;
  fires: number[];
}

// How to get from one history position to another using only the
// server's own moves: undo up to the common ancestor, re-fire down.
export function planJump(from: number[], to: number[]): JumpPlan {
  let common = 0;
  while (common < from.length && common < to.length && from[common] === to[common]) {
    common += 1;
  }
  return { undos: from.length - common, fires: to.slice(common) };
}

export class HistoryTree {
  private entries = new Map<string, HistoryEntry>();
  cursorKey = "";

  constructor() {
    this.entries.set("", { path: [], state: null, children: [] });
  }

  record(state: SessionState): HistoryEntry {
    const path = state.fired;
    // make sure every ancestor exists so the tree always renders whole
    for (let depth = 0; depth < path.length; depth += 1) {
      this.ensure(path.slice(0, depth), path[depth]);
    }
    const entry = this.ensure(path, null);
    entry.state = state;
    this.cursorKey = pathKey(path);
    return entry;
  }

  private ensure(path: number[], childEdge: number | null): HistoryEntry {
    const key = pathKey(path);
    let entry = this.entries.get(key);
    if (!entry) {
      entry = { path, state: null, children: [] };
      this.entries.set(key, entry);
    }
    if (childEdge !== null && !entry.children.includes(childEdge)) {
      entry.children.push(childEdge);
    }
    return entry;
  }

  get(key: string): HistoryEntry | undefined {
    return this.entries.get(key);
  }

  cursor(): HistoryEntry {
    const entry = this.entries.get(this.cursorKey);
    if (!entry) throw new Error(`history cursor ${this.cursorKey} missing`);
    return entry;
  }

  cursorState(): SessionState {
    const state = this.cursor().state;
    if (!state) throw new Error("history cursor has no recorded state");
    return state;
  }

  parentKey(key: string): string | null {
    const entry = this.entries.get(key);
    if (!entry || entry.path.length === 0) return null;
    return pathKey(entry.path.slice(0, -1));
  }

  atRoot(): boolean {
    return this.cursorKey === "";
  }
}
