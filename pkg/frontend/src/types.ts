// Wire types for the game service.  Positions and bond labels are the
// server's exact scalar strings ("-1/4", "0.25") and the client never
// parses them into numbers -- they are displayed verbatim.

export interface GraphEntry {
  i: number; // 1-based row
  j: number; // 1-based column
  value: string | number;
}

// Off-diagonal entries only; the diagonal is fixed at 2 server-side.
export interface GraphDocument {
  n: number;
  entries: GraphEntry[];
  labels?: string[];
  mode?: "exact" | "float";
  tolerance?: number;
}

export interface SessionState {
  position: string[];
  legal_moves: number[]; // 1-based node numbers
  is_terminal: boolean;
  fired: number[]; // firing order, 1-based
  reduced_word: number[];
  branch_id: string;
}

export type AutoOutcome = "terminated" | "step_limit" | "stuck_never";

export interface AutoState extends SessionState {
  auto_outcome: AutoOutcome;
}

export interface Bond {
  i: number;
  j: number;
  p: string;
  q: string;
  m: number | "inf";
}

export interface Analysis {
  n: number;
  labels: string[];
  mode: string;
  connected: boolean;
  matrix_type: "plus" | "zero" | "minus" | null;
  components: number[][];
  unital: boolean[];
  f_values: (number | null)[];
  odd_asymmetries: number[][];
  s_mult: (string[] | null)[];
  bonds: Bond[];
}

export type BannerKind = "none" | "terminal" | "bound" | "never";

// Everything the board needs to draw one frame; values come straight
// out of the last server state, legality included.
export interface BoardViewModel {
  sessionId: string;
  nodes: { label: string; value: string; legal: boolean }[];
  edges: Bond[];
  fired: number[];
  reducedWord: number[];
  banner: { kind: BannerKind; text: string };
  historyCursor: string;
}
