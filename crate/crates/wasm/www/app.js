import init, { generate, field_grid, verify_report } from "./pkg/kgexact_wasm.js";

const defaultSpec = {
  dim: 4,
  mass: [-1.0, 0.0],
  R: 4,
  branch: "plus",
  mode: "float",
  rows: [
    { m: [0.3, 0.1], g: [-0.2, 0.4], d: [0.1, 0.0] },
    { m: [0.5, -0.2], g: [0.1, 0.3], d: [-0.4, 0.1] },
    { m: [-0.1, 0.2], g: [0.3, -0.1], d: [0.2, 0.2] },
    { m: [0.2, 0.0], g: [-0.3, 0.2], d: [0.1, -0.1] },
    { m: [0.1, 0.3], g: [0.2, 0.1], d: [-0.2, 0.0] },
  ],
};

const el = (id) => document.getElementById(id);
const status = (msg) => { el("status").textContent = msg; };
const output = (msg) => { el("output").textContent = msg; };

function specText() {
  return el("spec").value;
}

function doGenerate() {
  try {
    output(generate(specText(), el("format").value));
    status("generated");
  } catch (e) {
    status("error: " + e);
  }
}

// diverging blue-white-red for signed values, white-to-blue for |U|
function color(v, signed) {
  if (signed) {
    const t = Math.max(-1, Math.min(1, v));
    return t >= 0
      ? [255, Math.round(255 * (1 - t)), Math.round(255 * (1 - t))]
      : [Math.round(255 * (1 + t)), Math.round(255 * (1 + t)), 255];
  }
  const t = Math.max(0, Math.min(1, v));
  return [Math.round(255 * (1 - t)), Math.round(255 * (1 - 0.55 * t)), 255];
}

function doField() {
  const n = parseInt(el("grid-n").value, 10);
  const opts = {
    r: parseInt(el("field-r").value, 10),
    axis_x: parseInt(el("axis-x").value, 10),
    axis_y: parseInt(el("axis-y").value, 10),
    fixed: [0, 0, 0, 0],
    half_width: parseFloat(el("half-width").value),
    n,
  };
  let data;
  try {
    data = field_grid(specText(), JSON.stringify(opts));
  } catch (e) {
    status("error: " + e);
    return;
  }

  const component = el("component").value;
  const values = new Float64Array(n * n);
  let peak = 0;
  for (let i = 0; i < n * n; i++) {
    const re = data[2 * i], im = data[2 * i + 1];
    values[i] =
      component === "re" ? re : component === "im" ? im : Math.hypot(re, im);
    peak = Math.max(peak, Math.abs(values[i]));
  }
  if (peak === 0) peak = 1;

  const canvas = el("field");
  canvas.width = n;
  canvas.height = n;
  const ctx = canvas.getContext("2d");
  const img = ctx.createImageData(n, n);
  const signed = component !== "abs";
  for (let i = 0; i < n * n; i++) {
    // flip vertically so the y axis points up
    const row = Math.floor(i / n);
    const src = (n - 1 - row) * n + (i % n);
    const [r, g, b] = color(values[src] / peak, signed);
    img.data[4 * i] = r;
    img.data[4 * i + 1] = g;
    img.data[4 * i + 2] = b;
    img.data[4 * i + 3] = 255;
  }
  ctx.putImageData(img, 0, 0);
  el("field-info").textContent =
    `U_${opts.r} over x${opts.axis_x} (right) x x${opts.axis_y} (up), ` +
    `[-${opts.half_width}, ${opts.half_width}]^2, peak ${component === "abs" ? "" : "|"}value${component === "abs" ? "" : "|"} = ${peak.toExponential(3)}`;
  status("field rendered");
}

function doVerify() {
  try {
    const body = JSON.parse(verify_report(specText(), el("numeric").checked));
    const lines = body.reports.map(
      (r) => `r = ${String(r.r).padStart(2)}  ${r.passed ? "PASS" : "FAIL"}  ${r.notes}`
    );
    lines.push("");
    lines.push("radicand: " + body.radicand_verdict);
    lines.push(body.all_passed ? "all members verified" : "SOME MEMBERS FAILED");
    output(lines.join("\n"));
    status(body.all_passed ? "verification passed" : "verification FAILED");
  } catch (e) {
    status("error: " + e);
  }
}

async function main() {
  el("spec").value = JSON.stringify(defaultSpec, null, 2);
  await init();
  el("btn-generate").addEventListener("click", doGenerate);
  el("btn-field").addEventListener("click", doField);
  el("btn-verify").addEventListener("click", doVerify);
  status("ready");
  doField();
}

main().catch((e) => status("failed to load wasm module: " + e));
