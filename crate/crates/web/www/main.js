import init, { calibrate, privatizeDemo, utilityCurve } from "./pkg/dpbloom_web.js";

function inputs(section) {
  const values = {};
  for (const el of section.querySelectorAll("input")) values[el.name] = Number(el.value);
  return values;
}

function show(section, text, isError = false) {
  const out = section.querySelector(".out");
  out.textContent = text;
  out.className = isError ? "out err" : "out";
}

function clear(canvas) {
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  return ctx;
}

function drawBars(canvas, pmf, cutoff) {
  const ctx = clear(canvas);
  const max = Math.max(...pmf);
  const w = canvas.width / pmf.length;
  pmf.forEach((p, i) => {
    const h = (p / max) * (canvas.height - 20);
    ctx.fillStyle = i <= cutoff ? "#3b6ea5" : "#c0c0c0";
    ctx.fillRect(i * w + 2, canvas.height - h - 16, w - 4, h);
    ctx.fillStyle = "#000";
    ctx.fillText(String(i), i * w + w / 2 - 3, canvas.height - 4);
  });
}

function drawBits(canvas, rows) {
  const ctx = clear(canvas);
  const m = rows[0].length;
  const perRow = Math.min(m, 128);
  const lines = Math.ceil(m / perRow);
  const cell = Math.min(canvas.width / perRow, canvas.height / (2 * lines + 1));
  rows.forEach((bits, r) => {
    bits.forEach((b, j) => {
      const x = (j % perRow) * cell;
      const y = (r * (lines + 1) + Math.floor(j / perRow)) * cell;
      const flipped = r === 1 && b !== rows[0][j];
      ctx.fillStyle = flipped ? (b ? "#d04040" : "#f0b0b0") : b ? "#222" : "#eee";
      ctx.fillRect(x, y, cell - 1, cell - 1);
    });
  });
}

function drawLines(canvas, xs, series) {
  const ctx = clear(canvas);
  const pad = 30;
  const lx = xs.map(Math.log);
  const [x0, x1] = [Math.min(...lx), Math.max(...lx)];
  const px = (x) => pad + ((Math.log(x) - x0) / (x1 - x0 || 1)) * (canvas.width - 2 * pad);
  const py = (y) => canvas.height - pad - y * (canvas.height - 2 * pad);
  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad, canvas.width - 2 * pad, canvas.height - 2 * pad);
  for (const { values, color, label } of series) {
    ctx.strokeStyle = color;
    ctx.beginPath();
    values.forEach((v, i) => (i ? ctx.lineTo(px(xs[i]), py(v)) : ctx.moveTo(px(xs[i]), py(v))));
    ctx.stroke();
    ctx.fillStyle = color;
    ctx.fillText(label, px(xs[xs.length - 1]) - 90, py(values[values.length - 1]) - 6);
  }
}

const sections = {
  calibrate(section) {
    const v = inputs(section);
    const c = calibrate(v.m, v.k, v.size, v.epsilon, v.delta);
    drawBars(section.querySelector("canvas"), Array.from(c.pmf), c.nQuantile);
    show(section, `N = ${c.nQuantile}   ε₀ = ε/N = ${c.epsilon0.toFixed(4)}   p0 = ${c.p0.toFixed(4)}`);
  },
  privatize(section) {
    const v = inputs(section);
    const d = privatizeDemo(v.m, v.k, v.size, v.epsilon, v.delta, v.seed);
    drawBits(section.querySelector("canvas"), [Array.from(d.original), Array.from(d.noisy)]);
    show(section, `N = ${d.nQuantile}   ε₀ = ${d.epsilon0.toFixed(4)}   flipped ${d.flipped} of ${v.m} bits`);
  },
  utility(section) {
    const v = inputs(section);
    const eps = new Float64Array([0.25, 0.5, 1, 2, 4, 8, 16]);
    const c = utilityCurve(v.m, v.k, v.size, v.alpha, v.delta, eps, v.queries, 1);
    drawLines(section.querySelector("canvas"), Array.from(c.epsilon), [
      { values: Array.from(c.standardAccuracy), color: "#2a8a2a", label: "plain filter" },
      { values: Array.from(c.privateAccuracy), color: "#3b6ea5", label: "private filter" },
      { values: Array.from(c.bound), color: "#c05050", label: "lower bound" },
    ]);
    const rows = Array.from(c.epsilon).map(
      (e, i) => `ε=${e}\tprivate ${c.privateAccuracy[i].toFixed(4)}\tplain ${c.standardAccuracy[i].toFixed(4)}\tbound ${c.bound[i].toFixed(4)}`,
    );
    show(section, rows.join("\n"));
  },
};

await init();
for (const [id, run] of Object.entries(sections)) {
  const section = document.getElementById(id);
  const go = () => {
    try {
      run(section);
    } catch (e) {
      show(section, String(e), true);
    }
  };
  section.querySelector("button").addEventListener("click", go);
  go();
}
