// Payload shapes mirroring the engine's JSON API (all snake_case).

export interface RecommendationPayload {
  outfit_id: string;
  name: string;
  price: number;
  size: string;
  fit_distance: number;
  pattern_score: number;
  matched_itemset: string;
  trend: "GEN" | "SPEC" | "SAME" | "NONE";
}

export interface RecommendResponse {
  recommendations: RecommendationPayload[];
}

export interface ApiErrorBody {
  error: { field: string | null; message: string };
}

export interface EstimateResponse {
  measurements: Record<string, number | string>;
}

export interface RecommendRequestBody {
  gender: string;
  profession: string;
  budget: number;
  category?: string;
  top_k: number;
  measurements: Record<string, number>;
}

export const MEASUREMENT_FIELDS = [
  "bust",
  "waist",
  "hips",
  "back_width",
  "front_chest",
  "shoulder",
  "sleeve",
  "wrist",
  "upper_arm",
  "calf",
  "ankle",
  "nape_to_waist",
  "front_shoulder_to_waist",
  "outside_leg",
] as const;

export type MeasurementField = (typeof MEASUREMENT_FIELDS)[number];

export type Badge = "manual" | "estimated";
