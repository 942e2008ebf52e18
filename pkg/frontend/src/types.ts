// Wire types mirroring the service contract (docs/http-api.md).

export interface ModelInfo {
  id: string;
  model_type: string;
  vocab_size: number;
  classes: string[];
}

export interface ModelsListing {
  models: ModelInfo[];
  default: string;
}

export interface PredictResponse {
  label: string;
  score_kind: "probability" | "margin";
  scores: Record<string, number>;
  top_features: [string, number][];
  cleaned_text: string;
  model: string;
  latency_ms: number;
  warning?: string;
}

export interface HistoryEntry {
  text: string;
  modelId: string;
  response: PredictResponse;
}
