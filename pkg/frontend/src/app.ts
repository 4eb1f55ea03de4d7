import { ApiClient, FetchLike } from "./api.js";
import { Explorer, ViewState } from "./state.js";
import type { GraphView } from "./types.js";

// DOM wiring: the server's SVG is injected verbatim (it already switches
// between the baseline and marked-boundary layouts by quiver shape); clicks
// resolve through data-member attributes, the slider drives /path/seek.

function miniMap(graph: GraphView): string {
  const n = graph.nodes.length;
  const radius = 52;
  const cx = 60;
  const cy = 60;
  const points = graph.nodes.map((_, k) => {
    const angle = -Math.PI / 2 + (2 * Math.PI * k) / n;
    return [cx + radius * Math.cos(angle), cy + radius * Math.sin(angle)] as const;
  });
  const edges = graph.edges
    .map(([a, b]) => {
      const [x1, y1] = points[a];
      const [x2, y2] = points[b];
      return `<line x1="${x1}" y1="${y1}" x2="${x2}" y2="${y2}" stroke="#bbb"/>`;
    })
    .join("");
  const nodes = graph.nodes
    .map((label, k) => {
      const [x, y] = points[k];
      const active = label === graph.current;
      return `<circle cx="${x}" cy="${y}" r="${active ? 7 : 4}" fill="${active ? "#d33" : "#888"}"><title>${label}</title></circle>`;
    })
    .join("");
  return `<svg width="120" height="120" viewBox="0 0 120 120">${edges}${nodes}</svg>`;
}

export function mount(
  root: HTMLElement,
  base: string,
  fetchImpl: FetchLike = (url, init) => fetch(url, init),
): Explorer {
  const api = new ApiClient(base, fetchImpl);
  const explorer = new Explorer(api);

  root.innerHTML = `
    <div class="toolbar">
      <select id="demo">
        <option value="square">square flips</option>
        <option value="pentagon">pentagon flips</option>
        <option value="frozen">completed gon (frozen arcs)</option>
        <option value="path">projectives-to-injectives path</option>
      </select>
      <button id="undo">undo</button>
      <span id="status"></span>
    </div>
    <div id="diagram"></div>
    <div class="sidebar">
      <div id="minimap"></div>
      <div id="count"></div>
      <label id="sliderbox" hidden>
        t = <input id="slider" type="range" min="0" max="1" step="0.05" value="0"/>
        <span id="tval">0</span>
      </label>
    </div>`;

  const diagram = root.querySelector<HTMLElement>("#diagram")!;
  const status = root.querySelector<HTMLElement>("#status")!;
  const minimap = root.querySelector<HTMLElement>("#minimap")!;
  const count = root.querySelector<HTMLElement>("#count")!;
  const sliderBox = root.querySelector<HTMLElement>("#sliderbox")!;
  const slider = root.querySelector<HTMLInputElement>("#slider")!;

  function render(state: ViewState): void {
    diagram.innerHTML = state.svg;
    sliderBox.hidden = state.kind !== "path";
    status.textContent = state.frozenArcId
      ? `arc ${state.frozenArcId} is frozen`
      : state.lastError ?? "";
    if (state.graph) {
      minimap.innerHTML = miniMap(state.graph);
      count.textContent = `${state.graph.count} triangulations`;
    } else {
      minimap.innerHTML = "";
      count.textContent = "";
    }
    for (const el of diagram.querySelectorAll<SVGElement>("[data-member]")) {
      const id = el.dataset.member!;
      const arc = state.arcs.find((a) => a.id === id);
      if (arc && !arc.mutable) el.classList.add("frozen");
      el.addEventListener("click", () => void explorer.clickArc(id));
    }
    root.querySelector<HTMLElement>("#tval")!.textContent = state.t.toFixed(2);
  }

  explorer.subscribe(render);
  root.querySelector<HTMLButtonElement>("#undo")!.addEventListener("click", () => void explorer.undo());
  slider.addEventListener("change", () => void explorer.scrub(Number(slider.value)));

  const demos: Record<string, () => Promise<void>> = {
    square: () => explorer.start({ type: "polygon", n: 1 }),
    pentagon: () => explorer.start({ type: "polygon", n: 2 }),
    frozen: () =>
      explorer.start({
        type: "gon",
        state: {
          arena: "completed",
          diagonals: [["-inf", "0"], ["0", "+inf"]],
          tails: [
            { kind: "fan", vertex: 0, direction: "left", start: -2 },
            { kind: "fan", vertex: 0, direction: "right", start: 2 },
          ],
        },
      }),
    path: () => explorer.start({ type: "path" }),
  };
  const picker = root.querySelector<HTMLSelectElement>("#demo")!;
  picker.addEventListener("change", () => void demos[picker.value]());
  void demos.square();
  return explorer;
}

declare global {
  interface Window {
    explorerMount?: typeof mount;
  }
}

if (typeof window !== "undefined") {
  window.explorerMount = mount;
  const root = document.getElementById("app");
  if (root) mount(root, "");
}
