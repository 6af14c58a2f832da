/** JSON shapes of the interpret server's /api endpoints. */

export interface Metadata {
  task: "regression" | "classification";
  label_spec: { lo: number; hi: number };
  feature_names: string[];
  dataset_size: number;
}

export interface InstanceRow {
  id: string;
  text: string;
  gold_label: number | null;
  pred_label: number;
  pred_score: number;
}

export interface InstancePage {
  total: number;
  items: InstanceRow[];
}

export interface Prediction {
  score: number;
  label: number;
  probs?: number[];
}

export interface TokenAttribution {
  tokens: string[];
  deltas: number[];
  base_score: number;
}

export interface FeatureAttribution {
  names: string[];
  contributions: number[];
  base_score: number;
  bias: number;
}

export interface ApiError {
  error: string;
  message: string;
}
