// DOM wiring for index.html: reads inputs into the form model, renders view
// states into #results, and keeps measurement badges in sync.

import { ApiClient, ApiError, NetworkError } from "./api";
import { RecommendController, ViewState } from "./controller";
import { RecommendForm } from "./form";
import { renderFieldError } from "./render";
import { MEASUREMENT_FIELDS, MeasurementField } from "./types";

const form = new RecommendForm();
// ?api=http://host:port points the page at an engine on another origin
const apiBase = new URLSearchParams(location.search).get("api") ?? "";
const api = new ApiClient((input, init) => fetch(input, init), apiBase);

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

const results = el<HTMLDivElement>("results");
const submitButton = el<HTMLButtonElement>("submit");
const budgetSlider = el<HTMLInputElement>("budget-slider");
const budgetInput = el<HTMLInputElement>("budget");

const controller = new RecommendController(api, (state: ViewState) => {
  if (state.kind === "idle") {
    results.innerHTML = "";
    return;
  }
  results.innerHTML = state.html;
  const retry = results.querySelector<HTMLButtonElement>(
    "button[data-action=retry]",
  );
  if (retry) retry.addEventListener("click", () => void controller.submit(form));
});

function syncSubmitState(): void {
  submitButton.disabled = !form.canSubmit;
}

function bindText(id: string, apply: (value: string) => void): void {
  const input = el<HTMLInputElement | HTMLSelectElement>(id);
  input.addEventListener("input", () => {
    apply(input.value);
    syncSubmitState();
  });
}

bindText("gender", (v) => (form.gender = v));
bindText("profession", (v) => (form.profession = v));
bindText("category", (v) => (form.category = v));
bindText("top-k", (v) => (form.topK = v));

budgetInput.addEventListener("input", () => {
  form.budget = budgetInput.value;
  budgetSlider.value = budgetInput.value || budgetSlider.value;
  syncSubmitState();
});

// The what-if slider re-queries the live service on release.
budgetSlider.addEventListener("input", () => {
  budgetInput.value = budgetSlider.value;
  form.budget = budgetSlider.value;
  syncSubmitState();
});
budgetSlider.addEventListener("change", () => {
  if (form.canSubmit) void controller.submit(form);
});

function badgeSpan(field: MeasurementField): HTMLSpanElement {
  return el<HTMLSpanElement>(`badge-${field}`);
}

function refreshBadge(field: MeasurementField): void {
  const badge = form.badge(field);
  badgeSpan(field).textContent = badge ?? "";
}

for (const field of MEASUREMENT_FIELDS) {
  const input = el<HTMLInputElement>(`m-${field}`);
  input.addEventListener("input", () => {
    form.setMeasurement(field, input.value);
    refreshBadge(field);
  });
}

el<HTMLButtonElement>("estimate").addEventListener("click", async () => {
  const file = el<HTMLInputElement>("image").files?.[0];
  const ppcm = Number(el<HTMLInputElement>("ppcm").value);
  if (!file || !(ppcm > 0)) {
    results.innerHTML = renderFieldError(
      "ppcm",
      "select a PGM file and a pixels-per-centimeter value > 0",
    );
    return;
  }
  try {
    const resp = await api.estimate(await file.arrayBuffer(), ppcm);
    for (const field of form.applyEstimate(resp.measurements)) {
      el<HTMLInputElement>(`m-${field}`).value =
        form.measurements.get(field)?.value ?? "";
      refreshBadge(field);
    }
  } catch (err) {
    const message =
      err instanceof ApiError || err instanceof NetworkError
        ? err.message
        : String(err);
    results.innerHTML = renderFieldError("image", message);
  }
});

el<HTMLFormElement>("recommend-form").addEventListener("submit", (event) => {
  event.preventDefault();
  void controller.submit(form);
});

syncSubmitState();
