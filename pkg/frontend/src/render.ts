// HTML-string renderers. Deliberately DOM-free so they run under node:test;
// main.ts assigns the output to innerHTML. Every number shown comes verbatim
// from a PredictResponse (exposed unrounded in data-score; labels are only a
// formatted view of the same value).

import type { HistoryEntry, PredictResponse } from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

function barWidthPercent(score: number, kind: string, allScores: number[]): number {
  if (kind === "probability") return score * 100;
  // Margins are unbounded; scale relative to the largest magnitude for display.
  const maxAbs = Math.max(...allScores.map(Math.abs), 1e-12);
  return (Math.abs(score) / maxAbs) * 100;
}

export function renderBars(response: PredictResponse): string {
  const values = Object.values(response.scores);
  const rows = Object.entries(response.scores)
    .map(([cls, score]) => {
      const width = barWidthPercent(score, response.score_kind, values);
      const shown =
        response.score_kind === "probability" ? `${(score * 100).toFixed(1)}%` : score.toFixed(3);
      const winner = cls === response.label ? " winner" : "";
      return (
        `<div class="bar-row${winner}">` +
        `<span class="bar-class">${escapeHtml(cls)}</span>` +
        `<span class="bar-track"><span class="bar-fill" style="width:${width}%"></span></span>` +
        `<span class="bar-value" data-score="${score}">${shown}</span>` +
        `</div>`
      );
    })
    .join("");
  return `<div class="bars" data-score-kind="${escapeHtml(response.score_kind)}">${rows}</div>`;
}

export function renderBadge(label: string): string {
  return `<span class="badge badge-${escapeHtml(label.toLowerCase())}">${escapeHtml(label)}</span>`;
}

/** Echo the cleaned text with the contributing n-grams wrapped in <mark>. */
export function highlightTerms(cleanedText: string, topFeatures: [string, number][]): string {
  if (!cleanedText) return "<em>(empty after cleaning)</em>";
  type Span = { start: number; end: number; value: number };
  const spans: Span[] = [];
  const taken: boolean[] = new Array(cleanedText.length).fill(false);
  // Longest term first so a bigram wins over its component unigrams.
  const ordered = [...topFeatures].sort((a, b) => b[0].length - a[0].length);
  for (const [term, value] of ordered) {
    if (!term) continue;
    let from = 0;
    while (true) {
      const at = cleanedText.indexOf(term, from);
      if (at < 0) break;
      from = at + 1;
      const end = at + term.length;
      const beforeOk = at === 0 || cleanedText[at - 1] === " ";
      const afterOk = end === cleanedText.length || cleanedText[end] === " ";
      if (!beforeOk || !afterOk) continue;
      if (taken.slice(at, end).some(Boolean)) continue;
      for (let i = at; i < end; i++) taken[i] = true;
      spans.push({ start: at, end, value });
    }
  }
  spans.sort((a, b) => a.start - b.start);
  let html = "";
  let cursor = 0;
  for (const span of spans) {
    html += escapeHtml(cleanedText.slice(cursor, span.start));
    const polarity = span.value >= 0 ? "pos" : "neg";
    html += `<mark class="term-${polarity}" title="${span.value}">` +
      escapeHtml(cleanedText.slice(span.start, span.end)) + "</mark>";
    cursor = span.end;
  }
  html += escapeHtml(cleanedText.slice(cursor));
  return html;
}

export function renderWarning(message: string): string {
  return `<div class="warning-banner">${escapeHtml(message)}</div>`;
}

export function renderError(message: string): string {
  return `<div class="error-banner">${escapeHtml(message)}</div>`;
}

export function renderResult(entry: HistoryEntry): string {
  const r = entry.response;
  const features = r.top_features
    .map(([term, value]) => `<li><code>${escapeHtml(term)}</code> <span data-score="${value}">${value.toFixed(4)}</span></li>`)
    .join("");
  return (
    `<div class="result" data-model="${escapeHtml(r.model)}">` +
    `<div class="result-head">${renderBadge(r.label)}` +
    `<span class="meta">${escapeHtml(r.model)} &middot; ${r.latency_ms.toFixed(1)} ms</span></div>` +
    (r.warning ? renderWarning(r.warning) : "") +
    renderBars(r) +
    `<div class="echo">${highlightTerms(r.cleaned_text, r.top_features)}</div>` +
    (features ? `<ul class="features">${features}</ul>` : "") +
    `</div>`
  );
}

export function renderHistory(entries: HistoryEntry[]): string {
  if (!entries.length) return `<p class="empty">No submissions yet.</p>`;
  return entries
    .map(
      (entry) =>
        `<article class="history-entry">` +
        `<div class="history-input">${escapeHtml(entry.text)}</div>` +
        renderResult(entry) +
        `</article>`
    )
    .join("");
}

export interface PanelResult {
  modelId: string;
  response?: PredictResponse;
  error?: string;
}

export function renderComparePanels(results: PanelResult[]): string {
  const labels = new Set(results.filter((r) => r.response).map((r) => r.response!.label));
  const disagree = labels.size > 1;
  const panels = results
    .map((r) => {
      if (!r.response) {
        return (
          `<section class="panel panel-error" data-model="${escapeHtml(r.modelId)}">` +
          `<h3>${escapeHtml(r.modelId)}</h3>${renderError(r.error ?? "request failed")}</section>`
        );
      }
      const flag = disagree ? `<span class="disagree-flag" title="models disagree">&ne;</span>` : "";
      return (
        `<section class="panel${disagree ? " disagree" : ""}" data-model="${escapeHtml(r.modelId)}">` +
        `<h3>${escapeHtml(r.modelId)} ${flag}</h3>` +
        renderBadge(r.response.label) +
        renderBars(r.response) +
        `</section>`
      );
    })
    .join("");
  return `<div class="panels${disagree ? " has-disagreement" : ""}">${panels}</div>`;
}
