// Shared test plumbing: an intercepting fetch and the example payload as the
// engine actually serves it (captured from a live run over the bundled
// workspace).

import type { FetchLike } from "../src/api";
import { RecommendForm } from "../src/form";

export const EXAMPLE_RESPONSE_TEXT =
  '{"recommendations":[{"outfit_id":"ts1","name":"Classic T-shirt",' +
  '"price":2400.0,"size":"M","fit_distance":0.0,"pattern_score":2,' +
  '"matched_itemset":"{T-shirt, 2500}","trend":"SPEC"}]}';

export interface Intercepted {
  url: string;
  method: string;
  body: string | null;
  responseText: string;
}

export function interceptingFetch(
  responses: Array<{ status?: number; text: string }>,
  log: Intercepted[],
): FetchLike {
  let call = 0;
  return async (url, init) => {
    const spec = responses[Math.min(call, responses.length - 1)];
    call += 1;
    log.push({
      url,
      method: init?.method ?? "GET",
      body: typeof init?.body === "string" ? init.body : null,
      responseText: spec.text,
    });
    return new Response(spec.text, {
      status: spec.status ?? 200,
      headers: { "content-type": "application/json" },
    });
  };
}

export function exampleForm(): RecommendForm {
  const form = new RecommendForm();
  form.gender = "female";
  form.profession = "Engineer";
  form.budget = "2500";
  form.category = "western";
  form.topK = "5";
  const values: Array<[string, string]> = [
    ["bust", "31"], ["waist", "30"], ["hips", "41"], ["back_width", "20"],
    ["front_chest", "13"], ["shoulder", "6"], ["sleeve", "5"], ["wrist", "10"],
    ["nape_to_waist", "17"], ["front_shoulder_to_waist", "16"],
    ["calf", "13"], ["ankle", "12"], ["outside_leg", "41"],
  ];
  for (const [field, value] of values) {
    form.setMeasurement(field as never, value);
  }
  return form;
}

export function displayedField(html: string, field: string): string[] {
  const pattern = new RegExp(
    `<span data-field="${field}"[^>]*>([^<]*)</span>`,
    "g",
  );
  const out: string[] = [];
  for (const match of html.matchAll(pattern)) out.push(match[1]);
  return out;
}
