import init, { boundCurve, autoCyclicProfile, packSmall } from "./pkg/cyclic_gv_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => parseInt($(id).value, 10);

function fail(el, e) {
  el.className = "err";
  el.textContent = String(e);
}

function axes(ctx, w, h, pad) {
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.moveTo(pad, pad);
  ctx.lineTo(pad, h - pad);
  ctx.lineTo(w - pad, h - pad);
  ctx.stroke();
}

function plotCurve() {
  const info = $("curve-info");
  let data;
  try {
    data = JSON.parse(boundCurve(num("curve-p"), num("curve-q"), num("curve-n")));
  } catch (e) {
    return fail(info, e);
  }
  const c = $("curve");
  const ctx = c.getContext("2d");
  const pad = 30;
  axes(ctx, c.width, c.height, pad);
  const pts = data.points;
  const ys = pts.map((p) => p.log2_bound);
  const lo = Math.min(...ys, -1), hi = Math.max(...ys, 1);
  const nmax = pts[pts.length - 1].n;
  const x = (n) => pad + ((n - 2) / Math.max(nmax - 2, 1)) * (c.width - 2 * pad);
  const y = (v) => c.height - pad - ((v - lo) / (hi - lo)) * (c.height - 2 * pad);
  ctx.strokeStyle = "#ccc";
  ctx.beginPath();
  ctx.moveTo(pad, y(0));
  ctx.lineTo(c.width - pad, y(0));
  ctx.stroke();
  for (const p of pts) {
    ctx.fillStyle = p.size_condition ? "#2a2" : "#c33";
    ctx.fillRect(x(p.n) - 1, y(p.log2_bound) - 1, 2, 2);
  }
  ctx.fillStyle = "#000";
  ctx.fillText(hi.toFixed(1), 2, pad);
  ctx.fillText(lo.toFixed(1), 2, c.height - pad);
  ctx.fillText("n = " + nmax, c.width - pad - 40, c.height - 10);
  const first = pts.find((p) => p.size_condition);
  info.className = "";
  info.textContent = `H(δ) = ${data.entropy}, GV rate 1 − H(δ) = ${data.gv_rate}; ` +
    (first ? `size condition first holds at n = ${first.n}` : "size condition never holds in range");
}

function plotProfile() {
  const info = $("prof-info");
  let data;
  try {
    data = JSON.parse(autoCyclicProfile($("prof-word").value, num("prof-p"), num("prof-q")));
  } catch (e) {
    return fail(info, e);
  }
  const c = $("profile");
  const ctx = c.getContext("2d");
  const pad = 20;
  axes(ctx, c.width, c.height, pad);
  const n = data.n;
  const bw = (c.width - 2 * pad) / Math.max(n - 1, 1);
  const thr = (num("prof-p") / num("prof-q")) * n;
  for (const s of data.shifts) {
    const h = (s.count / n) * (c.height - 2 * pad);
    ctx.fillStyle = s.fixed ? "#999" : s.meets ? "#2a2" : "#c33";
    ctx.fillRect(pad + (s.shift - 1) * bw + 1, c.height - pad - h, Math.max(bw - 2, 1), h);
  }
  const ty = c.height - pad - (thr / n) * (c.height - 2 * pad);
  ctx.strokeStyle = "#33c";
  ctx.beginPath();
  ctx.moveTo(pad, ty);
  ctx.lineTo(c.width - pad, ty);
  ctx.stroke();
  info.className = "";
  info.textContent = `period ${data.period}, canonical ${data.canonical}, ` +
    `auto-cyclic distance ${data.auto_cyclic}, ${data.member ? "in" : "not in"} C′ at δ = ${data.delta}`;
}

function runPack() {
  const info = $("pack-info");
  let data;
  try {
    data = JSON.parse(packSmall(num("pack-n"), num("pack-p"), num("pack-q")));
  } catch (e) {
    $("pack-words").textContent = "";
    return fail(info, e);
  }
  info.className = "";
  info.textContent = `|C′| = ${data.cprime_size}, |C| = ${data.size} in ${data.steps.length} orbits, ` +
    `rate ${data.rate ?? "-"} vs GV ${data.gv_rate}; size bound ${data.rate_bound_holds ? "holds" : "fails"}`;
  const steps = data.steps.map((s) => `${s.representative}  removed ${s.removed}`).join("\n");
  $("pack-words").textContent = steps + (data.words ? "\n\n" + data.words.join("\n") : "");
}

await init();
$("curve-go").onclick = plotCurve;
$("prof-go").onclick = plotProfile;
$("pack-go").onclick = runPack;
plotCurve();
plotProfile();
runPack();
