// Submission flow: validation gate, one in-flight recommend request at a
// time (a new submit aborts and supersedes the pending one), and a view
// callback fed rendered HTML.

import { ApiClient, ApiError, NetworkError } from "./api";
import { RecommendForm } from "./form";
import { renderCards, renderFieldError, renderRetryBanner } from "./render";
import type { RecommendResponse } from "./types";

export type ViewState =
  | { kind: "results"; html: string; response: RecommendResponse }
  | { kind: "field-error"; html: string; field: string | null }
  | { kind: "retry"; html: string }
  | { kind: "idle" };

export class RecommendController {
  private inflight: AbortController | null = null;
  private serial = 0;

  constructor(
    private readonly api: ApiClient,
    private readonly onView: (state: ViewState) => void,
  ) {}

  /** Submit the form; resolves after the view was updated. */
  async submit(form: RecommendForm): Promise<void> {
    const errors = form.validate();
    if (Object.keys(errors).length > 0) {
      // invalid forms never reach the network
      const [field, message] = Object.entries(errors)[0];
      this.onView({
        kind: "field-error",
        html: renderFieldError(field, message),
        field,
      });
      return;
    }

    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    const ticket = ++this.serial;

    let response: RecommendResponse;
    try {
      response = await this.api.recommend(form.toRequestBody(), controller.signal);
    } catch (err) {
      if (ticket !== this.serial) return; // superseded: ignore
      if (err instanceof DOMException && err.name === "AbortError") return;
      if (err instanceof ApiError) {
        this.onView({
          kind: "field-error",
          html: renderFieldError(err.field, err.message),
          field: err.field,
        });
        return;
      }
      if (err instanceof NetworkError) {
        this.onView({ kind: "retry", html: renderRetryBanner(err.message) });
        return;
      }
      throw err;
    }
    if (ticket !== this.serial) return; // a newer submit won
    this.onView({
      kind: "results",
      html: renderCards(response.recommendations),
      response,
    });
  }
}
