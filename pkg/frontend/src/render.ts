// Pure HTML-string rendering. Every number is printed verbatim from the API
// payload (String(value)); the client never recomputes or reformats scores.

import type { RecommendationPayload } from "./types";

export const TREND_GLYPHS: Record<string, string> = {
  GEN: "↗",
  SPEC: "↘",
  SAME: "~>",
  NONE: "·",
};

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function verbatim(value: number | string): string {
  return String(value);
}

export function renderCard(rec: RecommendationPayload): string {
  const glyph = TREND_GLYPHS[rec.trend] ?? TREND_GLYPHS.NONE;
  return [
    `<article class="card" data-outfit-id="${escapeHtml(rec.outfit_id)}">`,
    `<h3>${escapeHtml(rec.name)}</h3>`,
    `<p class="price">price: <span data-field="price">${verbatim(rec.price)}</span></p>`,
    `<p class="size">size: <span data-field="size">${escapeHtml(rec.size)}</span></p>`,
    `<p class="fit">fit distance: <span data-field="fit_distance">${verbatim(rec.fit_distance)}</span></p>`,
    `<p class="score">pattern score: <span data-field="pattern_score">${verbatim(rec.pattern_score)}</span></p>`,
    `<p class="itemset">matched: <span data-field="matched_itemset">${escapeHtml(rec.matched_itemset)}</span></p>`,
    `<p class="trend">trend: <span data-field="trend" title="${escapeHtml(rec.trend)}">${escapeHtml(glyph)}</span></p>`,
    `</article>`,
  ].join("");
}

export function renderCards(recs: RecommendationPayload[]): string {
  // API order is preserved exactly; the service already ranked them.
  if (recs.length === 0) {
    return `<p class="empty">No outfits match this request.</p>`;
  }
  return `<div class="cards">${recs.map(renderCard).join("")}</div>`;
}

export function renderFieldError(field: string | null, message: string): string {
  const where = field ? ` data-error-field="${escapeHtml(field)}"` : "";
  return `<p class="field-error"${where}>${escapeHtml(message)}</p>`;
}

export function renderRetryBanner(message: string): string {
  return (
    `<div class="banner retry">service unreachable: ${escapeHtml(message)} ` +
    `<button data-action="retry">retry</button></div>`
  );
}
