// Demo page logic: wires the sliders to the wasm module and draws the
// curves on plain canvases. Build the module with
//   wasm-pack build crates/wasm --target web --out-dir www/pkg
// and serve crates/wasm/www with any static file server.

import init, { scan_interpolation, coherence_curve, prepare } from "./pkg/fringelab_wasm.js";

const $ = (id) => document.getElementById(id);

function showError(message) {
  const box = $("error");
  box.textContent = String(message);
  box.hidden = !message;
}

function plot(canvas, series, yMax) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = { left: 44, right: 12, top: 10, bottom: 24 };
  ctx.clearRect(0, 0, w, h);

  const x = (t) => pad.left + t * (w - pad.left - pad.right);
  const y = (v) => h - pad.bottom - (v / yMax) * (h - pad.top - pad.bottom);

  ctx.strokeStyle = "#2c313a";
  ctx.fillStyle = "#a8adb5";
  ctx.font = "12px system-ui";
  ctx.lineWidth = 1;
  const gridLines = 4;
  for (let k = 0; k <= gridLines; k++) {
    const v = (yMax * k) / gridLines;
    ctx.beginPath();
    ctx.moveTo(pad.left, y(v));
    ctx.lineTo(w - pad.right, y(v));
    ctx.stroke();
    ctx.fillText(v.toFixed(1), 8, y(v) + 4);
  }

  for (const { values, color, dash = [] } of series) {
    ctx.strokeStyle = color;
    ctx.setLineDash(dash);
    ctx.lineWidth = 2;
    ctx.beginPath();
    values.forEach((v, i) => {
      const px = x(i / (values.length - 1));
      const py = y(v);
      i === 0 ? ctx.moveTo(px, py) : ctx.lineTo(px, py);
    });
    ctx.stroke();
    ctx.setLineDash([]);
  }
  return { x, y };
}

function redrawScan() {
  const eta = Number($("eta").value);
  const beta = Number($("beta").value);
  $("etaOut").value = eta.toFixed(2);
  $("betaOut").value = beta.toFixed(2);
  try {
    const data = JSON.parse(scan_interpolation(eta, beta, 361));
    const series = [
      { values: data.quantum_intensity_a, color: "#8fc7ff" },
      { values: data.classical_intensity_a, color: "#ffb36b" },
    ];
    if (data.coincidence_aa) {
      series.push({ values: data.coincidence_aa, color: "#7ee8a2", dash: [6, 4] });
    }
    plot($("scanPlot"), series, 2.4);
    $("vq").textContent = data.visibility_quantum.toFixed(4);
    $("vc").textContent = data.visibility_classical.toFixed(4);
    showError(null);
  } catch (err) {
    showError(err);
  }
}

function redrawCurve() {
  const eta = Number($("eta").value);
  try {
    const rows = JSON.parse(coherence_curve(201));
    const canvas = $("curvePlot");
    const { x, y } = plot(canvas, [
      { values: rows.map((r) => r.g1_simulated), color: "#8fc7ff" },
      { values: rows.map((r) => r.g1_classical), color: "#ffb36b", dash: [6, 4] },
    ], 1.1);
    const ctx = canvas.getContext("2d");
    ctx.strokeStyle = "#e86b6b";
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    ctx.moveTo(x(eta), y(0));
    ctx.lineTo(x(eta), y(1.1));
    ctx.stroke();
  } catch (err) {
    showError(err);
  }
}

function redrawPrep() {
  const angle = Number($("angle").value);
  $("angleOut").value = angle.toFixed(3);
  try {
    const data = JSON.parse(prepare(angle));
    const terms = data.state
      .map((t) => {
        const amp = Math.hypot(t.re, t.im).toFixed(4);
        return `${amp} · |${t.occupation.join(",")}⟩`;
      })
      .join("  +  ");
    $("prepStats").innerHTML =
      `post-selected state: <b>${terms}</b> &nbsp;·&nbsp; ` +
      `success probability <b>${data.success_probability.toFixed(4)}</b> &nbsp;·&nbsp; ` +
      `target fidelity <b>${data.fidelity.toFixed(6)}</b>`;
    showError(null);
  } catch (err) {
    showError(err);
  }
}

await init();
for (const id of ["eta", "beta"]) {
  $(id).addEventListener("input", () => {
    redrawScan();
    redrawCurve();
  });
}
$("angle").addEventListener("input", redrawPrep);
redrawScan();
redrawCurve();
redrawPrep();
