import init, { parityCurve, deltaPhiCurve, scenarioSummary } from "../pkg/mzi_parity_wasm.js";

const POINTS = 801;
const $ = (id) => document.getElementById(id);

function params() {
  return {
    kind: $("kind").value,
    ops: Math.max(0, Math.round(Number($("ops").value))),
    r: Number($("r").value),
    nz: Number($("nz").value),
    phiMin: Number($("phiMin").value),
    phiMax: Number($("phiMax").value),
  };
}

function draw(xs, ys, logScale) {
  const canvas = $("plot");
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 50;
  ctx.clearRect(0, 0, w, h);

  const tf = logScale ? (y) => Math.log10(y) : (y) => y;
  const finite = ys.map(tf).filter(Number.isFinite);
  if (finite.length === 0) return;
  let lo = Math.min(...finite);
  let hi = Math.max(...finite);
  if (hi - lo < 1e-12) { lo -= 1; hi += 1; }
  const x0 = xs[0];
  const x1 = xs[xs.length - 1];
  const px = (x) => pad + ((x - x0) / (x1 - x0 || 1)) * (w - 2 * pad);
  const py = (y) => h - pad - ((y - lo) / (hi - lo)) * (h - 2 * pad);

  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  ctx.fillStyle = "#333";
  ctx.font = "12px sans-serif";
  const fmt = (v) => (logScale ? `1e${v.toFixed(1)}` : v.toPrecision(3));
  ctx.fillText(fmt(hi), 4, pad + 4);
  ctx.fillText(fmt(lo), 4, h - pad);
  ctx.fillText(x0.toPrecision(3), pad, h - pad + 16);
  ctx.fillText(x1.toPrecision(3), w - pad - 30, h - pad + 16);
  ctx.fillText("φ", w / 2, h - 12);

  ctx.strokeStyle = "#1f5fbf";
  ctx.lineWidth = 1.5;
  ctx.beginPath();
  let pen = false;
  xs.forEach((x, i) => {
    const y = tf(ys[i]);
    if (!Number.isFinite(y)) { pen = false; return; }
    if (pen) ctx.lineTo(px(x), py(y)); else ctx.moveTo(px(x), py(y));
    pen = true;
  });
  ctx.stroke();
}

function showSummary(s) {
  const rows = [
    ["squeezed-mode n̄", s.nbar_squeezed],
    ["total n̄", s.total_nbar],
    ["quantum Fisher information", s.qfi],
    ["Cramér-Rao bound", s.crb],
    ["Δφ as φ → 0", s.delta_phi_zero],
    ["shot-noise limit", s.snl],
    ["Heisenberg limit", s.hl],
  ];
  $("summary").innerHTML = rows
    .map(([k, v]) => `<tr><td>${k}</td><td>${v.toPrecision(6)}</td></tr>`)
    .join("");
  s.free();
}

function update() {
  const p = params();
  $("error").textContent = "";
  try {
    const xs = Array.from({ length: POINTS }, (_, i) => p.phiMin + ((p.phiMax - p.phiMin) * i) / (POINTS - 1));
    const delta = $("quantity").value === "delta";
    const f = delta ? deltaPhiCurve : parityCurve;
    const ys = f(p.kind, p.ops, p.r, p.nz, p.phiMin, p.phiMax, POINTS);
    draw(xs, Array.from(ys), delta);
    showSummary(scenarioSummary(p.kind, p.ops, p.r, p.nz));
  } catch (e) {
    $("error").textContent = String(e.message ?? e);
  }
}

await init();
for (const el of document.querySelectorAll("input, select")) el.addEventListener("input", update);
update();
