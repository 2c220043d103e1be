import type { BoardViewModel } from "./types";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 520;
const HEIGHT = 420;
const NODE_RADIUS = 26;

// Fixed circular layout by node order: node 1 at the top, clockwise.
// Deterministic on purpose -- screenshots and DOM tests stay stable.
export function nodeCenters(n: number): { x: number; y: number }[] {
  const cx = WIDTH / 2;
  const cy = HEIGHT / 2;
  const r = Math.min(WIDTH, HEIGHT) / 2 - 70;
  const centers = [];
  for (let i = 0; i < n; i += 1) {
    const angle = -Math.PI / 2 + (2 * Math.PI * i) / n;
    centers.push({ x: cx + r * Math.cos(angle), y: cy + r * Math.sin(angle) });
  }
  return centers;
}

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [name, value] of Object.entries(attrs)) {
    el.setAttribute(name, value);
  }
  return el;
}

// Draws one frame from the view model.  Click handlers are attached to
// legal nodes only, so clicking anything else issues no request at all.
export function renderBoard(
  svg: SVGSVGElement,
  vm: BoardViewModel,
  onFire: (node: number) => void,
): void {
  svg.replaceChildren();
  svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
  const centers = nodeCenters(vm.nodes.length);

  for (const bond of vm.edges) {
    const a = centers[bond.i - 1];
    const b = centers[bond.j - 1];
    svg.appendChild(
      svgEl("line", {
        x1: String(a.x),
        y1: String(a.y),
        x2: String(b.x),
        y2: String(b.y),
        class: "edge",
      }),
    );
    const label = svgEl("text", {
      x: String((a.x + b.x) / 2),
      y: String((a.y + b.y) / 2 - 6),
      class: "edge-label",
      "text-anchor": "middle",
    });
    const m = bond.m === "inf" ? "∞" : String(bond.m);
    label.textContent = `(${bond.p}, ${bond.q}) m=${m}`;
    svg.appendChild(label);
  }

  vm.nodes.forEach((node, index) => {
    const { x, y } = centers[index];
    const group = svgEl("g", {
      class: node.legal ? "node legal" : "node",
      "data-node": String(index + 1),
    });
    const circle = svgEl("circle", {
      cx: String(x),
      cy: String(y),
      r: String(NODE_RADIUS),
    });
    if (node.legal) {
      circle.addEventListener("click", () => onFire(index + 1));
    }
    group.appendChild(circle);
    const name = svgEl("text", {
      x: String(x),
      y: String(y + 5),
      class: "node-label",
      "text-anchor": "middle",
    });
    name.textContent = node.label;
    group.appendChild(name);
    // value badge: the server's scalar string, verbatim
    const value = svgEl("text", {
      x: String(x),
      y: String(y + NODE_RADIUS + 18),
      class: "value",
      "data-node": String(index + 1),
      "text-anchor": "middle",
    });
    value.textContent = node.value;
    group.appendChild(value);
    svg.appendChild(group);
  });
}
