import { ApiError, GameClient } from "./api";
import { renderBoard } from "./board";
import { HistoryTree, pathKey, planJump } from "./history";
import type {
  Analysis,
  AutoOutcome,
  BannerKind,
  BoardViewModel,
  GraphDocument,
} from "./types";

export interface AppOptions {
  serverUrl: string;
  root: HTMLElement;
  fetchFn?: typeof fetch;
  // delay between animated replay steps; tests run with 0
  animationMs?: number;
  // longest auto suffix that still gets replayed step by step
  replayCap?: number;
}

interface AutoBanner {
  key: string;
  outcome: AutoOutcome;
  maxSteps: number;
}

const SKELETON = `
<div id="setup">
  <h1>numbers game</h1>
  <label for="graph-json">graph document (JSON)</label>
  <textarea id="graph-json" rows="9" spellcheck="false"></textarea>
  <div id="graph-error" class="field-error"></div>
  <label for="position">initial position (comma-separated values)</label>
  <input id="position" type="text">
  <div id="position-error" class="field-error"></div>
  <button id="btn-start">start session</button>
</div>
<div id="play" hidden>
  <div id="banner" class="banner" hidden></div>
  <svg id="board" xmlns="http://www.w3.org/2000/svg"></svg>
  <div id="words">
    <div>fired: <span id="fired-word"></span></div>
    <div>reduced: <span id="reduced-word"></span></div>
  </div>
  <div id="controls">
    <button id="btn-undo">undo</button>
    <button id="btn-auto">auto</button>
    <label>strategy <select id="auto-strategy">
      <option value="first_legal">first_legal</option>
      <option value="random">random</option>
    </select></label>
    <label>seed <input id="auto-seed" type="number" value="0"></label>
    <label>max steps <input id="auto-steps" type="number" value="50" min="1"></label>
    <span id="whatif"></span>
  </div>
  <details id="history" open>
    <summary>history</summary>
    <div id="history-tree"></div>
  </details>
  <div id="sidebar">
    <h2>analysis</h2>
    <div id="analysis"></div>
  </div>
</div>
<div id="error-bar" hidden>
  <span id="error-text"></span>
  <button id="btn-retry" hidden>retry</button>
</div>
`;

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

function wordText(word: number[]): string {
  return word.length ? word.map((n) => `s${n}`).join(" ") : "(empty)";
}

export class App {
  readonly client: GameClient;
  history = new HistoryTree();
  sessionId: string | null = null;
  analysis: Analysis | null = null;
  graphDoc: GraphDocument | null = null;

  private root: HTMLElement;
  private animationMs: number;
  private replayCap: number;
  private lastAuto: AutoBanner | null = null;
  private queue: Promise<void> = Promise.resolve();

  constructor(options: AppOptions) {
    this.client = new GameClient(options.serverUrl, options.fetchFn);
    this.root = options.root;
    this.animationMs = options.animationMs ?? 250;
    this.replayCap = options.replayCap ?? 200;
    this.root.innerHTML = SKELETON;
    this.el("btn-start").addEventListener("click", () => {
      const graphText = (this.el("graph-json") as HTMLTextAreaElement).value;
      const positionText = (this.el("position") as HTMLInputElement).value;
      this.enqueue(() => this.doStart(graphText, positionText));
    });
    this.el("btn-undo").addEventListener("click", () =>
      this.enqueue(() => this.doUndo()),
    );
    this.el("btn-auto").addEventListener("click", () =>
      this.enqueue(() => this.doAuto()),
    );
  }

  el(id: string): HTMLElement {
    const found = this.root.querySelector(`#${id}`);
    if (!found) throw new Error(`missing element #${id}`);
    return found as HTMLElement;
  }

  prefill(doc: GraphDocument, position: string): void {
    (this.el("graph-json") as HTMLTextAreaElement).value = JSON.stringify(
      doc,
      null,
      2,
    );
    (this.el("position") as HTMLInputElement).value = position;
  }

  // All user actions run through one queue: a single active session,
  // no overlapping requests, every state change a full round trip.
  enqueue(action: () => Promise<void>): Promise<void> {
    const run = this.queue.then(async () => {
      this.hideErrorBar();
      try {
        await action();
      } catch (err) {
        this.reportError(err, action);
      }
    });
    this.queue = run;
    return run;
  }

  // resolves when every queued action has finished (tests await this)
  settle(): Promise<void> {
    return this.queue;
  }

  start(graphText: string, positionText: string): Promise<void> {
    return this.enqueue(() => this.doStart(graphText, positionText));
  }

  fireNode(node: number): Promise<void> {
    return this.enqueue(() => this.doFire(node));
  }

  undo(): Promise<void> {
    return this.enqueue(() => this.doUndo());
  }

  jumpTo(key: string): Promise<void> {
    return this.enqueue(() => this.doJump(key));
  }

  whatIf(node: number): Promise<void> {
    return this.enqueue(() => this.doWhatIf(node));
  }

  autoPlay(): Promise<void> {
    return this.enqueue(() => this.doAuto());
  }

  private async doStart(graphText: string, positionText: string): Promise<void> {
    this.setFieldError("graph-error", "");
    this.setFieldError("position-error", "");
    let doc: GraphDocument;
    try {
      doc = JSON.parse(graphText);
    } catch (err) {
      this.setFieldError("graph-error", `JsonError: ${(err as Error).message}`);
      return;
    }
    const position = positionText
      .split(",")
      .map((s) => s.trim())
      .filter((s) => s.length > 0);
    let created;
    try {
      created = await this.client.createSession(doc, position);
    } catch (err) {
      if (err instanceof ApiError && err.status === 422) {
        // graph problems mention the entries; everything else that gets
        // past graph building can only be about the position values
        const aboutPosition =
          /position/i.test(err.detail) ||
          (err.code === "ValueSyntaxError" && !/entries/.test(err.detail));
        const field = aboutPosition ? "position-error" : "graph-error";
        this.setFieldError(field, `${err.code}: ${err.detail}`);
        return;
      }
      throw err;
    }
    this.analysis = await this.client.analyze(doc);
    this.graphDoc = doc;
    this.sessionId = created.id;
    this.lastAuto = null;
    this.history = new HistoryTree();
    this.history.record(created.state);
    this.el("play").hidden = false;
    this.render();
  }

  private requireSession(): string {
    if (!this.sessionId) throw new Error("no active session");
    return this.sessionId;
  }

  private async doFire(node: number): Promise<void> {
    const id = this.requireSession();
    const state = await this.client.fire(id, node);
    this.history.record(state);
    this.render();
  }

  private async doUndo(): Promise<void> {
    if (this.history.atRoot()) return;
    const id = this.requireSession();
    const state = await this.client.undo(id);
    this.history.record(state);
    this.render();
  }

  private async doJump(key: string): Promise<void> {
    const id = this.requireSession();
    const target = this.history.get(key);
    if (!target) return;
    const plan = planJump(this.history.cursor().path, target.path);
    for (let i = 0; i < plan.undos; i += 1) {
      this.history.record(await this.client.undo(id));
    }
    for (const node of plan.fires) {
      this.history.record(await this.client.fire(id, node));
    }
    this.render();
  }

  // fork a sibling line: step back once, fire a different node
  private async doWhatIf(node: number): Promise<void> {
    if (this.history.atRoot()) return;
    const id = this.requireSession();
    this.history.record(await this.client.undo(id));
    this.history.record(await this.client.fire(id, node));
    this.render();
  }

  private async doAuto(): Promise<void> {
    const id = this.requireSession();
    const strategy = (this.el("auto-strategy") as HTMLSelectElement).value as
      | "first_legal"
      | "random";
    const seed = Number((this.el("auto-seed") as HTMLInputElement).value) || 0;
    const maxSteps =
      Number((this.el("auto-steps") as HTMLInputElement).value) || 50;
    const before = this.history.cursor().path.length;
    const finalState = await this.client.auto(id, {
      strategy,
      max_steps: maxSteps,
      seed,
    });
    const suffix = finalState.fired.slice(before);
    this.lastAuto = {
      key: pathKey(finalState.fired),
      outcome: finalState.auto_outcome,
      maxSteps,
    };
    if (suffix.length === 0 || suffix.length > this.replayCap) {
      this.history.record(finalState);
      this.render();
      return;
    }
    // replay as an animation: rewind on the server, then step forward
    // one fire at a time so every intermediate frame is server state
    for (let i = 0; i < suffix.length; i += 1) {
      this.history.record(await this.client.undo(id));
    }
    for (const node of suffix) {
      this.history.record(await this.client.fire(id, node));
      this.render();
      if (this.animationMs > 0) await sleep(this.animationMs);
    }
  }

  viewModel(): BoardViewModel {
    const state = this.history.cursorState();
    const analysis = this.analysis;
    const nodes = state.position.map((value, index) => ({
      label: analysis?.labels[index] ?? String(index + 1),
      value,
      legal: state.legal_moves.includes(index + 1),
    }));
    let banner: { kind: BannerKind; text: string } = { kind: "none", text: "" };
    if (state.is_terminal) {
      banner = {
        kind: "terminal",
        text: `position in −D — terminated after ${state.fired.length} steps`,
      };
    } else if (this.lastAuto && this.lastAuto.key === this.history.cursorKey) {
      if (this.lastAuto.outcome === "step_limit") {
        banner = {
          kind: "bound",
          text: `no termination within ${this.lastAuto.maxSteps} steps`,
        };
      } else if (this.lastAuto.outcome === "stuck_never") {
        banner = { kind: "never", text: "this line can never terminate" };
      }
    }
    return {
      sessionId: this.sessionId ?? "",
      nodes,
      edges: analysis?.bonds ?? [],
      fired: state.fired,
      reducedWord: state.reduced_word,
      banner,
      historyCursor: this.history.cursorKey,
    };
  }

  render(): void {
    const vm = this.viewModel();
    renderBoard(this.el("board") as unknown as SVGSVGElement, vm, (node) =>
      this.enqueue(() => this.doFire(node)),
    );
    this.renderBanner(vm);
    this.renderWords(vm);
    this.renderControls(vm);
    this.renderHistory();
    this.renderAnalysis();
  }

  private renderBanner(vm: BoardViewModel): void {
    const banner = this.el("banner");
    banner.hidden = vm.banner.kind === "none";
    banner.textContent = vm.banner.text;
    banner.className = `banner banner-${vm.banner.kind}`;
  }

  private renderWords(vm: BoardViewModel): void {
    this.el("fired-word").textContent = wordText(vm.fired);
    const sameAsFired =
      vm.fired.length === vm.reducedWord.length &&
      vm.fired.every((n, i) => n === vm.reducedWord[i]);
    this.el("reduced-word").textContent =
      `${wordText(vm.reducedWord)} — length ${vm.reducedWord.length}` +
      (sameAsFired && vm.fired.length > 0 ? " (fired word is reduced)" : "");
  }

  private renderControls(vm: BoardViewModel): void {
    (this.el("btn-undo") as HTMLButtonElement).disabled = this.history.atRoot();
    const whatif = this.el("whatif");
    whatif.replaceChildren();
    if (this.history.atRoot()) return;
    const parentKey = this.history.parentKey(this.history.cursorKey);
    const parent = parentKey === null ? undefined : this.history.get(parentKey);
    if (!parent?.state) return;
    const cameBy = vm.fired[vm.fired.length - 1];
    for (const node of parent.state.legal_moves) {
      if (node === cameBy) continue;
      const button = document.createElement("button");
      button.className = "whatif-btn";
      button.dataset.whatif = String(node);
      button.textContent = `what if s${node}?`;
      button.addEventListener("click", () =>
        this.enqueue(() => this.doWhatIf(node)),
      );
      whatif.appendChild(button);
    }
  }

  private renderHistory(): void {
    const container = this.el("history-tree");
    container.replaceChildren();
    container.appendChild(this.historyItem(""));
  }

  private historyItem(key: string): HTMLElement {
    const entry = this.history.get(key);
    const item = document.createElement("div");
    item.className = "hist-item";
    if (!entry) return item;
    const button = document.createElement("button");
    button.className =
      key === this.history.cursorKey ? "hist-node current" : "hist-node";
    button.dataset.key = key;
    const last = entry.path[entry.path.length - 1];
    let label = entry.path.length === 0 ? "start" : `s${last}`;
    if (entry.state?.is_terminal) label += " ■";
    button.textContent = label;
    button.addEventListener("click", () =>
      this.enqueue(() => this.doJump(key)),
    );
    item.appendChild(button);
    if (entry.children.length > 0) {
      const children = document.createElement("div");
      children.className = "hist-children";
      for (const edge of entry.children) {
        children.appendChild(this.historyItem(pathKey([...entry.path, edge])));
      }
      item.appendChild(children);
    }
    return item;
  }

  private renderAnalysis(): void {
    const analysis = this.analysis;
    const container = this.el("analysis");
    container.replaceChildren();
    if (!analysis) return;
    const line = (text: string) => {
      const div = document.createElement("div");
      div.textContent = text;
      container.appendChild(div);
    };
    line(`type: ${analysis.matrix_type ?? "n/a (disconnected)"}`);
    line(`mode: ${analysis.mode}`);
    analysis.components.forEach((component, index) => {
      const names = component.join(",");
      if (analysis.unital[index]) {
        line(`component {${names}}: unital, f=${analysis.f_values[index]}`);
      } else {
        line(`component {${names}}: non-unital`);
      }
    });
    const odd = analysis.odd_asymmetries;
    line(
      odd.length
        ? `odd asymmetries: ${odd.map(([i, j]) => `${i}↔${j}`).join(", ")}`
        : "odd asymmetries: none",
    );
    analysis.s_mult.forEach((ks, index) => {
      const name = `S(alpha_${index + 1})`;
      line(
        ks === null
          ? `${name}: infinite (non-unital component)`
          : `${name} = {${ks.join(", ")}}`,
      );
    });
  }

  private setFieldError(id: string, text: string): void {
    const el = this.el(id);
    el.textContent = text;
    el.hidden = text === "";
  }

  private hideErrorBar(): void {
    this.el("error-bar").hidden = true;
    this.el("btn-retry").hidden = true;
  }

  private reportError(err: unknown, retry: () => Promise<void>): void {
    const bar = this.el("error-bar");
    const text = this.el("error-text");
    bar.hidden = false;
    if (err instanceof ApiError) {
      // the board keeps the last consistent state; nothing was recorded
      text.textContent = `${err.code}: ${err.detail}`;
      return;
    }
    text.textContent = `connection failed: ${(err as Error).message}`;
    const button = this.el("btn-retry") as HTMLButtonElement;
    button.hidden = false;
    button.onclick = () => this.enqueue(retry);
  }
}
